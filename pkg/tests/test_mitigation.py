import math

import pytest
from scipy import integrate

from swarmfire.fire import FireFront, area, point_on_front
from swarmfire.mitigation import (FireMitigationRecord, SectorTrack,
                                  angular_control, assign_sectors,
                                  closed_form_quench_time, merging_decision,
                                  nominal_angular_velocity, polar_sector_bounds,
                                  quench_area_rate, repulsion_decision,
                                  repulsion_heading)

TWO_PI = 2.0 * math.pi


def make_fire(a=300.0, b=250.0, center=(0.0, 0.0)):
    return FireFront(0, center, a, b)


def test_quench_area_rate():
    assert quench_area_rate(5.0, 0.1, 1.0, 4.0) == pytest.approx(12.5)
    assert quench_area_rate(7.0, 0.1, 0.0, 4.0) == pytest.approx(70.0)
    cf = 0.1 * 4.0
    assert quench_area_rate(cf, 0.1, 1.0, 4.0) == pytest.approx(1.0)


def test_closed_form_quench_time():
    assert closed_form_quench_time(10000.0, 5, 2.0) == pytest.approx(1000.0)
    assert closed_form_quench_time(10000.0, 10, 2.0) == pytest.approx(500.0)
    assert closed_form_quench_time(0.0, 3, 2.0) == 0.0


def test_assign_sectors_counts_and_bounds():
    f = make_fire()
    members = [(i, point_on_front(f, TWO_PI * i / 8)) for i in range(8)]
    tracks = assign_sectors(f, members)
    assert len(tracks) == 8
    for t in tracks:
        assert t.hi - t.lo == pytest.approx(TWO_PI / 8)
        assert t.lo <= t.theta_ref <= t.hi
        assert t.direction in (-1, 1)


def test_assign_sectors_single_uav():
    f = make_fire()
    tracks = assign_sectors(f, [(5, (400.0, 0.0))])
    assert tracks[0].lo == 0.0
    assert tracks[0].hi == pytest.approx(TWO_PI)


def test_assign_sectors_cyclic_order_preserved():
    f = make_fire()
    # members placed at increasing angles get increasing sector indices
    members = [(10, (300.0, 10.0)), (11, (0.0, 300.0)), (12, (-300.0, -10.0))]
    tracks = assign_sectors(f, members)
    order = {t.uav_id: t.sector_index for t in tracks}
    assert order[10] < order[11] < order[12]


def test_assign_sectors_keep_state():
    f = make_fire()
    old = SectorTrack(uav_id=3, sector_index=0, lo=0.0, hi=TWO_PI,
                      theta=1.0, theta_ref=1.0, direction=-1, joined=True,
                      join_time=42.0)
    tracks = assign_sectors(f, [(3, (400.0, 0.0)), (4, (-400.0, 0.0))],
                            keep={3: old})
    t3 = [t for t in tracks if t.uav_id == 3][0]
    assert t3.joined and t3.join_time == 42.0 and t3.direction == -1


def test_assign_sectors_empty_raises():
    with pytest.raises(ValueError):
        assign_sectors(make_fire(), [])


def test_sector_areas_equal_in_parametric_angle():
    """Uniform parametric intervals carve equal areas (quadrature check)."""
    a, b = 300.0, 250.0
    n = 5
    for m in range(n):
        lo, hi = TWO_PI * m / n, TWO_PI * (m + 1) / n
        val, _ = integrate.quad(lambda t: 0.5 * a * b, lo, hi)
        assert val == pytest.approx(math.pi * a * b / n)


def test_polar_sector_bounds_match_partition():
    from swarmfire.fire import partition_sectors
    f = make_fire()
    assert polar_sector_bounds(f, 6) == partition_sectors(f, 6)


def test_nominal_angular_velocity_circle():
    assert nominal_angular_velocity(100.0, 100.0, 10.0, 1.234) == pytest.approx(0.1)


def test_nominal_angular_velocity_ellipse_axis():
    # at theta=0 the local tangential radius is b
    assert nominal_angular_velocity(300.0, 250.0, 10.0, 0.0) == pytest.approx(
        10.0 / 250.0)


def test_nominal_angular_velocity_shrinks_with_size():
    small = nominal_angular_velocity(50.0, 50.0, 10.0, 0.7)
    big = nominal_angular_velocity(500.0, 500.0, 10.0, 0.7)
    assert big < small


def test_angular_control_pure_sweep():
    theta, ref, mu = angular_control(1.0, 1.0, 1, 0.0, TWO_PI, 0.1, -1.0,
                                     0.05, 1.0)
    assert ref == pytest.approx(1.1)
    assert theta == pytest.approx(1.1)
    assert mu == 1


def test_angular_control_error_decay():
    """|theta - theta_ref| shrinks as exp(K_m t) with no sweep."""
    theta, ref, mu = 0.5, 0.0, 1
    dt, km = 0.1, -1.0
    t = 0.0
    while abs(theta - ref) >= 1e-3:
        theta, ref, mu = angular_control(theta, ref, mu, -10.0, 10.0, 0.0,
                                         km, 0.05, dt)
        t += dt
    assert t <= 8.0
    assert t == pytest.approx(-math.log(1e-3 / 0.5), abs=0.2)


def test_angular_control_direction_flip():
    # reference within the turn margin of the upper bound, moving positive
    hi = 1.0
    _, ref, mu = angular_control(0.99, 0.99, 1, 0.0, hi, 0.5, -1.0, 0.05, 0.1)
    assert mu == -1
    assert ref <= hi


def test_angular_control_reference_stays_in_bounds():
    theta, ref, mu = 0.5, 0.5, 1
    lo, hi, margin = 0.0, 1.2566, 0.05
    for _ in range(6000):
        theta, ref, mu = angular_control(theta, ref, mu, lo, hi, 0.04, -1.0,
                                         margin, 0.1)
        assert lo - margin <= ref <= hi + margin
        assert mu in (-1, 1)


def test_angular_control_printed_law_offset():
    """The uncorrected law keeps a steady-state error on the return leg."""
    theta, ref, mu = 0.6, 0.6, -1
    omega, km = 0.05, -1.0
    for _ in range(200):
        theta, ref, mu = angular_control(theta, ref, mu, 0.0, 1.2, omega, km,
                                         0.05, 0.1, printed_law=True)
        if mu != -1:
            break
    # while still on the mu=-1 leg the offset approaches 2*omega/|km|
    assert abs(theta - ref) > 0.05


def test_merging_decision_clauses():
    assert merging_decision(2e5, 5, 1, 1e5, 2, 2)        # big fire
    assert merging_decision(1e4, 1, 1, 1e5, 2, 2)        # few fires left
    assert not merging_decision(2e5, 5, 2, 1e5, 2, 2)    # swarm cap
    assert not merging_decision(1e4, 5, 1, 1e5, 2, 2)    # neither disjunct


def test_repulsion_decision():
    assert repulsion_decision(0.7, 0.5, 0.9, True, False, False)
    assert not repulsion_decision(0.7, 0.5, 0.9, True, True, False)   # same swarm
    assert not repulsion_decision(0.7, 0.5, 0.9, False, False, False) # not busy
    assert not repulsion_decision(0.95, 0.5, 0.9, True, False, False) # above gamma
    assert not repulsion_decision(0.3, 0.5, 0.9, True, False, False)  # below gamma0
    assert not repulsion_decision(0.7, 0.5, 0.9, True, False, True)   # merge wins


def test_repulsion_heading():
    assert repulsion_heading(0.0) == pytest.approx(math.pi)
    assert repulsion_heading(math.pi / 2) == pytest.approx(-math.pi / 2)
    assert repulsion_heading(math.pi) == pytest.approx(0.0, abs=1e-12)


def test_record_counts():
    rec = FireMitigationRecord(fire_id=0, swarm_ids=[1, 2])
    rec.tracks = [SectorTrack(uav_id=i, sector_index=i, lo=0, hi=1,
                              theta=0, theta_ref=0, joined=(i < 2))
                  for i in range(4)]
    assert rec.n_uavs == 4
    assert rec.n_swarms == 2
    assert rec.joined_count() == 2
    assert rec.track_for(3).uav_id == 3
    with pytest.raises(KeyError):
        rec.track_for(99)
