"""Divide-and-conquer mitigation: quench-rate model, equal-area sector
assignment, the to-and-fro sweep control along the front, and the
merging/repulsion decisions coordinating swarms across fires.

Sweep angles here are the ellipse's parametric angle (the angle fed to
(a*cos, b*sin)); equal-area sectors are then exactly uniform intervals of
width 2*pi/N, which stay equal-area as the fire shrinks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .fire import FireFront, inverse_sweep_angle

TWO_PI = 2.0 * math.pi


def quench_area_rate(water_rate: float, c: float, nu: float,
                     flame_length: float) -> float:
    """Area one UAV quenches per second (m^2/s): water rate over the
    critical flow rate c * L_f**nu."""
    return water_rate / (c * flame_length ** nu)


def closed_form_quench_time(fire_area: float, n_uavs: int,
                            area_rate: float) -> float:
    """Quench time assuming simultaneous joins and no growth: A/(N*r_q)."""
    return fire_area / (n_uavs * area_rate)


@dataclass
class SectorTrack:
    """Sweep state of one UAV inside its sector (parametric angles)."""
    uav_id: int
    sector_index: int
    lo: float
    hi: float
    theta: float
    theta_ref: float
    direction: int = 1            # mu in {-1, +1}
    joined: bool = False
    join_time: float | None = None


@dataclass
class FireMitigationRecord:
    """Coordinator state for one fire under mitigation."""
    fire_id: int
    swarm_ids: list[int] = field(default_factory=list)
    tracks: list[SectorTrack] = field(default_factory=list)
    # UAVs of a merging swarm travelling to the front; the sectors are
    # repartitioned over everyone once all of them have arrived.
    pending_merge: list[int] = field(default_factory=list)

    @property
    def n_uavs(self) -> int:
        return len(self.tracks)

    @property
    def n_swarms(self) -> int:
        return len(self.swarm_ids)

    def joined_count(self) -> int:
        return sum(1 for t in self.tracks if t.joined)

    def track_for(self, uav_id: int) -> SectorTrack:
        for t in self.tracks:
            if t.uav_id == uav_id:
                return t
        raise KeyError(f"uav {uav_id} not assigned to fire {self.fire_id}")


def polar_sector_bounds(fire: FireFront, n: int) -> list[float]:
    """Polar-angle boundaries matching the uniform parametric sectors."""
    bounds = [0.0]
    for m in range(1, n):
        bounds.append(inverse_sweep_angle(fire.a, fire.b, TWO_PI * m / n))
    bounds.append(TWO_PI)
    return bounds


def assign_sectors(fire: FireFront,
                   members: list[tuple[int, tuple[float, float]]],
                   keep: dict[int, SectorTrack] | None = None
                   ) -> list[SectorTrack]:
    """Assign each member one of N equal-area sectors.

    Members are sorted by their current angular position around the fire
    center (ties by uav id) and mapped to sectors in the same cyclic order,
    which keeps the initial travel short and preserves relative order on
    repartition.  ``keep`` carries over joined/join-time state by uav id.
    """
    if not members:
        raise ValueError("cannot assign sectors to an empty member list")
    n = len(members)
    cx, cy = fire.center

    def angle_of(item):
        uid, (px, py) = item
        ang = math.atan2(py - cy, px - cx) % TWO_PI
        return (ang, uid)

    ordered = sorted(members, key=angle_of)
    tracks = []
    for idx, (uid, _pos) in enumerate(ordered):
        lo = TWO_PI * idx / n
        hi = TWO_PI * (idx + 1) / n
        mid = 0.5 * (lo + hi)
        track = SectorTrack(uav_id=uid, sector_index=idx, lo=lo, hi=hi,
                            theta=mid, theta_ref=mid)
        if keep and uid in keep:
            old = keep[uid]
            track.joined = old.joined
            track.join_time = old.join_time
            track.direction = old.direction
        tracks.append(track)
    return tracks


def nominal_angular_velocity(a: float, b: float, speed: float,
                             theta: float) -> float:
    """Angular rate capping the tangential ground speed at ``speed``."""
    r_local = math.hypot(a * math.sin(theta), b * math.cos(theta))
    return speed / r_local


def angular_control(theta: float, theta_ref: float, direction: int,
                    lo: float, hi: float, omega: float, track_gain: float,
                    turn_margin: float, dt: float,
                    printed_law: bool = False
                    ) -> tuple[float, float, int]:
    """One step of the sector sweep: the reference angle ping-pongs between
    the sector bounds and the angle tracks it with first-order decay.

    The default law is theta' = mu*omega + K_m*(theta - theta_ref), whose
    tracking error decays as exp(K_m*t) regardless of sweep direction.  With
    ``printed_law`` the drive term is omega (not mu*omega), which leaves a
    steady-state offset on the return leg; kept for fidelity experiments.
    """
    # Direction flip when the reference nears a bound while moving into it.
    if direction == -1 and theta_ref - lo < turn_margin:
        direction = 1
    elif direction == 1 and hi - theta_ref < turn_margin:
        direction = -1

    new_ref = theta_ref + direction * omega * dt
    if new_ref >= hi:
        new_ref = hi
        direction = -1
    elif new_ref <= lo:
        new_ref = lo
        direction = 1

    err = theta - theta_ref
    decay = math.exp(track_gain * dt)
    if printed_law:
        # error ODE: err' = omega*(1 - mu) + K_m*err
        err_ss = -omega * (1 - direction) / track_gain
        new_err = err_ss + (err - err_ss) * decay
    else:
        new_err = err * decay
    return (new_ref + new_err, new_ref, direction)


def merging_decision(fire_area: float, fires_remaining: int,
                     n_swarms_on_fire: int, merge_area: float,
                     merge_fires: int, merge_swarms: int) -> bool:
    """Whether another swarm may merge onto an already-serviced fire."""
    return ((fire_area > merge_area or fires_remaining < merge_fires)
            and n_swarms_on_fire < merge_swarms)


def repulsion_decision(probability: float, repel_threshold: float,
                       detect_threshold: float, under_mitigation: bool,
                       same_swarm: bool, merge_allowed: bool) -> bool:
    """Whether a searching swarm is deflected off a busy fire.  Mutually
    exclusive with merging for the same (swarm, fire, tick)."""
    return (under_mitigation and not same_swarm and not merge_allowed
            and repel_threshold < probability < detect_threshold)


def repulsion_heading(max_info_heading: float) -> float:
    """Exploration heading opposite the maximum information direction."""
    a = math.fmod(max_info_heading + TWO_PI, TWO_PI)
    out = a - math.pi
    if out <= -math.pi:
        out += TWO_PI
    return out
