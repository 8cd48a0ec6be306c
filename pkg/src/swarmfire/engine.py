"""Discrete-time mission engine: sensing, search, mitigation coordination,
vehicle motion, fire dynamics and metrics.

Each tick runs a fixed synchronous pipeline in deterministic order (swarms
by id, members by id), so identical (config, run_index) pairs replay
bit-identically regardless of how many runs execute in parallel.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fire as fi
from . import mitigation as mi
from . import search as se
from . import sensing as sn
from . import vehicle as ve
from .config import ScenarioConfig
from .rng import RngStreams


class SwarmMode(enum.Enum):
    SEARCH = "search"
    MITIGATE = "mitigate"


@dataclass
class SwarmState:
    id: int
    member_ids: list[int]
    mode: SwarmMode = SwarmMode.SEARCH
    fire_id: int | None = None
    repel_until: float = -math.inf
    repel_heading: float | None = None
    explore: bool | None = None   # last search stage, to detect switches


@dataclass
class RunResult:
    """Per-run mission metrics and optional step traces."""
    run_index: int
    strategy: str
    n_swarms: int
    detection_time: float
    mission_time: float
    fer: float
    objective: float
    complete: bool
    all_detected: bool
    quench_times: dict[int, float]
    quench_violations: list[int]
    detected_area_sum: float
    undetected_area_sum: float
    series: list[tuple]          # (t, F_d, F_f, F_r, S_s, S_q, total_area)
    events: list[dict]
    trace: list[dict] | None = None


class World:
    """Mutable state of one simulation run."""

    def __init__(self, cfg: ScenarioConfig, run_index: int,
                 collect_trace: bool = False):
        self.cfg = cfg
        self.run_index = run_index
        self.collect_trace = collect_trace
        self.time = 0.0
        self.tick_index = 0

        intensity = fi.fireline_intensity(cfg.fuel.flame_length,
                                          cfg.fuel.alpha, cfg.fuel.beta)
        self.spread = fi.spread_rate(intensity, cfg.fuel.heat_of_combustion,
                                     cfg.fuel.fuel_mass)
        self.area_rate = mi.quench_area_rate(cfg.quench.water_rate,
                                             cfg.quench.c, cfg.quench.nu,
                                             cfg.fuel.flame_length)
        self.fires = [fi.FireFront(i, s.center, s.a, s.b, spread=self.spread)
                      for i, s in enumerate(cfg.fires)]
        self.rng = RngStreams(cfg.engine.base_seed, run_index, cfg.n_uavs)
        self.uavs: list[ve.UavState] = []
        self.swarms: list[SwarmState] = []
        self._spawn()

        self.readings: dict[int, sn.SensorReading] = {}
        self.records: dict[int, mi.FireMitigationRecord] = {}
        self.pending_targets: dict[int, float] = {}   # uav id -> approach angle
        self.detected: dict[int, float] = {}
        self.detected_area: dict[int, float] = {}
        self.extinguished: dict[int, float] = {}
        self.returning: set[int] = set()              # members headed to C_s
        self.last_heading: dict[int, float] = {}
        self.events: list[dict] = []
        self.series: list[tuple] = []
        self.trace: list[dict] = []
        self.total_area0 = sum(fi.area(f) for f in self.fires)
        self.peak_total_area = self.total_area0
        self._cutoff = sn.cull_distance(cfg.sensing)
        diag = math.hypot(*cfg.area)
        self._l_max = diag / cfg.search.levy_step
        self._log_state()

    # -- initialisation ----------------------------------------------------

    def _spawn(self) -> None:
        cfg = self.cfg
        w, h = cfg.area
        rng = self.rng.world
        uid = 0
        if cfg.engine.strategy == "MSCIDC":
            for sid, size in enumerate(cfg.swarm_sizes):
                cx = rng.uniform(0.0, w)
                cy = rng.uniform(0.0, h)
                members = []
                for _ in range(size):
                    r = cfg.swarm_radius * math.sqrt(rng.uniform())
                    ang = rng.uniform(-math.pi, math.pi)
                    pos = se.clamp_to_area((cx + r * math.cos(ang),
                                            cy + r * math.sin(ang)), cfg.area)
                    self.uavs.append(ve.UavState(id=uid, swarm_id=sid, pos=pos))
                    members.append(uid)
                    uid += 1
                self.swarms.append(SwarmState(id=sid, member_ids=members))
        else:
            # Baselines: every UAV acts independently (swarm of one).
            for sid in range(cfg.n_uavs):
                pos = (rng.uniform(0.0, w), rng.uniform(0.0, h))
                self.uavs.append(ve.UavState(id=uid, swarm_id=sid, pos=pos))
                self.swarms.append(SwarmState(id=sid, member_ids=[uid]))
                uid += 1

    # -- helpers -----------------------------------------------------------

    def _event(self, kind: str, t: float, **payload) -> None:
        self.events.append({"type": kind, "t": t, **payload})

    def _fire_active(self, f: fi.FireFront) -> bool:
        return f.state in (fi.FireState.BURNING, fi.FireState.UNDER_MITIGATION)

    def fires_remaining(self) -> int:
        return len(self.fires) - len(self.extinguished)

    def _swarm_center(self, swarm: SwarmState) -> tuple[float, float]:
        xs = ys = 0.0
        for uid in swarm.member_ids:
            px, py = self.uavs[uid].pos
            xs += px
            ys += py
        n = len(swarm.member_ids)
        return (xs / n, ys / n)

    def _swarm_mean_vel(self, swarm: SwarmState) -> tuple[float, float]:
        xs = ys = 0.0
        for uid in swarm.member_ids:
            vx, vy = self.uavs[uid].vel
            xs += vx
            ys += vy
        n = len(swarm.member_ids)
        return (xs / n, ys / n)

    # -- tick pipeline -----------------------------------------------------

    def tick(self) -> None:
        cfg = self.cfg
        dt = cfg.engine.dt
        t_now = self.time + dt

        # (1) fire growth for fires not yet under mitigation
        for f in self.fires:
            if f.state is fi.FireState.BURNING:
                fi.grow(f, dt)

        # (2) sensing, fixed uav order
        new_readings = {}
        for uav in self.uavs:
            prev = self.readings.get(uav.id)
            rng = self.rng.agent(uav.id) if cfg.sensing.noise_std > 0 else None
            new_readings[uav.id] = sn.sample(
                uav.id, uav.pos, self.fires, prev, t_now, dt, cfg.sensing,
                rng=rng, cutoff=self._cutoff)
        self.readings = new_readings

        # (3) detection bookkeeping
        for uav in self.uavs:
            r = self.readings[uav.id]
            if (r.detected is not None and r.fire_id is not None
                    and r.fire_id not in self.detected
                    and self._fire_active(self.fires[r.fire_id])):
                self.detected[r.fire_id] = t_now
                self.detected_area[r.fire_id] = fi.area(self.fires[r.fire_id])
                self._event("detection", t_now, fire=r.fire_id, uav=uav.id)

        # (4) per-swarm search / coordination
        for swarm in self.swarms:
            if swarm.mode is SwarmMode.SEARCH:
                self._search_step(swarm, t_now)

        # (5) mitigation control and approach waypoints
        for fid in sorted(self.records):
            self._mitigation_step(fid, t_now)

        # (6) vehicle step, fixed uav order
        for uav in self.uavs:
            if uav.has_waypoint:
                v_ref = ve.reference_velocity(uav.pos, uav.waypoint,
                                              uav.waypoint_vel,
                                              cfg.kinematics.cruise_speed,
                                              cfg.kinematics.tracking_tau)
            else:
                v_ref = (0.0, 0.0)
            ve.step(uav, v_ref, cfg.kinematics.pole, dt)
            uav.pos = se.clamp_to_area(uav.pos, cfg.area)
            speed = math.hypot(*uav.vel)
            if speed > 0.1:
                self.last_heading[uav.id] = math.atan2(uav.vel[1], uav.vel[0])

        # (7) quenching
        for fid in sorted(self.records):
            f = self.fires[fid]
            if f.state is not fi.FireState.UNDER_MITIGATION:
                continue
            rec = self.records[fid]
            n_active = rec.joined_count()
            if n_active >= 1:
                fi.apply_quench(f, n_active, self.area_rate, dt)
                if f.state is fi.FireState.EXTINGUISHED:
                    self._extinguish(fid, t_now)

        # (8) bookkeeping
        total_area = sum(fi.area(f) for f in self.fires
                         if f.state is not fi.FireState.EXTINGUISHED)
        if total_area > self.peak_total_area:
            self.peak_total_area = total_area
        self.time = t_now
        self.tick_index += 1
        if (self.tick_index % cfg.engine.trace_stride == 0
                or self.done()):
            self._log_state()

    # -- search phase ------------------------------------------------------

    def _search_step(self, swarm: SwarmState, t_now: float) -> None:
        cfg = self.cfg
        if cfg.engine.strategy == "MSCIDC":
            self._mscidc_search(swarm, t_now)
        else:
            self._baseline_search(swarm, t_now)

    def _mscidc_search(self, swarm: SwarmState, t_now: float) -> None:
        cfg = self.cfg
        members = swarm.member_ids
        readings = {uid: self.readings[uid] for uid in members}

        # Detection by any member locks the swarm onto the fire (or merges).
        for uid in sorted(members):
            r = readings[uid]
            if r.detected is None or r.fire_id is None:
                continue
            f = self.fires[r.fire_id]
            if not self._fire_active(f):
                continue
            if self._lock_or_merge(swarm, r.fire_id, t_now):
                return
            break

        # Repulsion off a busy fire seen at intermediate probability.
        if t_now >= swarm.repel_until:
            for uid in sorted(members):
                r = readings[uid]
                if r.fire_id is None or r.fire_id not in self.records:
                    continue
                f = self.fires[r.fire_id]
                rec = self.records[r.fire_id]
                merge_ok = mi.merging_decision(
                    fi.area(f), self.fires_remaining(), rec.n_swarms,
                    cfg.mitigation.merge_area, cfg.mitigation.merge_fires,
                    cfg.mitigation.merge_swarms)
                if mi.repulsion_decision(
                        r.probability, cfg.sensing.repel_threshold,
                        cfg.sensing.detect_threshold,
                        f.state is fi.FireState.UNDER_MITIGATION,
                        swarm.id in rec.swarm_ids, merge_ok):
                    phi = self._max_info_heading(swarm)
                    swarm.repel_until = t_now + cfg.mitigation.repel_cooldown
                    swarm.repel_heading = mi.repulsion_heading(phi)
                    self._event("repulsion", t_now, swarm=swarm.id,
                                fire=r.fire_id)
                    for mid in members:
                        self.uavs[mid].has_waypoint = False
                        self.returning.discard(mid)
                    break

        # Stage selection and waypoint generation.
        temp_max = max(readings[uid].temperature for uid in members)
        repelled = t_now < swarm.repel_until
        explore = True if repelled else se.select_explore(
            temp_max, cfg.sensing.temp_threshold)
        if explore is not swarm.explore:
            # stage switch: drop in-flight legs so the new stage takes over
            # immediately instead of after the current (possibly long) leg
            swarm.explore = explore
            for mid in members:
                if mid not in self.returning:
                    self.uavs[mid].has_waypoint = False
        k_star = se.max_info_member(
            {uid: readings[uid].temp_rate for uid in members})
        if repelled and swarm.repel_heading is not None:
            phi_center = swarm.repel_heading
        else:
            phi_center = self._heading_of(k_star)
        phi0 = se.search_cone_halfwidth(temp_max, cfg.search.cone_gain,
                                        cfg.search.cone_rate)
        center = self._swarm_center(swarm)
        mean_vel = self._swarm_mean_vel(swarm)
        p_info = self.uavs[k_star].pos
        step_scale = cfg.search.levy_step if explore else cfg.search.brown_step

        for uid in members:
            uav = self.uavs[uid]
            px, py = uav.pos
            off = math.hypot(px - center[0], py - center[1])
            if off > cfg.swarm_radius:
                # local attraction: pull strays back to the swarm center
                uav.waypoint = center
                uav.waypoint_vel = (0.0, 0.0)
                uav.has_waypoint = True
                self.returning.add(uid)
                continue
            if uid in self.returning:
                self.returning.discard(uid)
                uav.has_waypoint = False
            if uav.has_waypoint and not ve.reached(
                    uav.pos, uav.waypoint, cfg.kinematics.cruise_speed,
                    cfg.engine.dt):
                continue
            rng = self.rng.agent(uid)
            psi = se.sample_heading(phi_center, phi0, rng)
            length = se.sample_step_length(explore, rng,
                                           cfg.search.levy_tail_exponent,
                                           self._l_max)
            travel = min(step_scale * length / cfg.kinematics.cruise_speed,
                         120.0)
            center_pred = (center[0] + mean_vel[0] * travel,
                           center[1] + mean_vel[1] * travel)
            uav.waypoint = se.next_waypoint(p_info, psi, step_scale, length,
                                            cfg.area, center_pred,
                                            cfg.swarm_radius)
            uav.waypoint_vel = (0.0, 0.0)
            uav.has_waypoint = True
            uav.mode = (ve.UavMode.REPELLED if repelled
                        else ve.UavMode.EXPLORE if explore
                        else ve.UavMode.EXPLOIT)

    def _heading_of(self, uid: int) -> float:
        uav = self.uavs[uid]
        speed = math.hypot(*uav.vel)
        if speed > 0.1:
            return math.atan2(uav.vel[1], uav.vel[0])
        if uid in self.last_heading:
            return self.last_heading[uid]
        return self.rng.agent(uid).uniform(-math.pi, math.pi)

    def _max_info_heading(self, swarm: SwarmState) -> float:
        rates = {uid: self.readings[uid].temp_rate
                 for uid in swarm.member_ids}
        return self._heading_of(se.max_info_member(rates))

    def _baseline_search(self, swarm: SwarmState, t_now: float) -> None:
        cfg = self.cfg
        uid = swarm.member_ids[0]
        uav = self.uavs[uid]
        r = self.readings[uid]

        if (r.detected is not None and r.fire_id is not None
                and self._fire_active(self.fires[r.fire_id])):
            self._baseline_join(swarm, r.fire_id, t_now)
            return

        if uav.has_waypoint and not ve.reached(
                uav.pos, uav.waypoint, cfg.kinematics.cruise_speed,
                cfg.engine.dt):
            return
        uav.waypoint = se.baseline_waypoint(
            cfg.engine.strategy, uav.pos, uav.vel, r.temperature,
            r.temp_rate, self.rng.agent(uid), cfg.area, cfg.search,
            cfg.sensing.temp_threshold)
        uav.waypoint_vel = (0.0, 0.0)
        uav.has_waypoint = True
        uav.mode = ve.UavMode.EXPLORE

    # -- mitigation coordination ------------------------------------------

    def _lock_or_merge(self, swarm: SwarmState, fid: int,
                       t_now: float) -> bool:
        """Returns True if the swarm transitioned into mitigation."""
        cfg = self.cfg
        f = self.fires[fid]
        rec = self.records.get(fid)
        member_pos = [(uid, self.uavs[uid].pos) for uid in swarm.member_ids]
        if rec is None:
            rec = mi.FireMitigationRecord(fire_id=fid, swarm_ids=[swarm.id])
            rec.tracks = mi.assign_sectors(f, member_pos)
            self.records[fid] = rec
            self._enter_mitigation(swarm, fid, rec, t_now, detector=True)
            self._event("lock", t_now, swarm=swarm.id, fire=fid)
            return True
        if swarm.id in rec.swarm_ids:
            return False
        merge_ok = mi.merging_decision(
            fi.area(f), self.fires_remaining(), rec.n_swarms,
            cfg.mitigation.merge_area, cfg.mitigation.merge_fires,
            cfg.mitigation.merge_swarms)
        if not merge_ok:
            return False
        rec.swarm_ids.append(swarm.id)
        rec.pending_merge.extend(swarm.member_ids)
        # Provisional alignment targets from the prospective full partition;
        # the actual repartition happens once every arrival reaches the front.
        union = [(t.uav_id, self.uavs[t.uav_id].pos) for t in rec.tracks]
        union += [(uid, self.uavs[uid].pos)
                  for uid in rec.pending_merge]
        prospective = mi.assign_sectors(f, union)
        for tr in prospective:
            if tr.uav_id in rec.pending_merge:
                self.pending_targets[tr.uav_id] = tr.theta_ref
        self._enter_mitigation(swarm, fid, rec, t_now, detector=False)
        self._event("merge", t_now, swarm=swarm.id, fire=fid)
        return True

    def _enter_mitigation(self, swarm: SwarmState, fid: int,
                          rec: mi.FireMitigationRecord, t_now: float,
                          detector: bool) -> None:
        f = self.fires[fid]
        swarm.mode = SwarmMode.MITIGATE
        swarm.fire_id = fid
        for uid in swarm.member_ids:
            uav = self.uavs[uid]
            uav.fire_id = fid
            self.returning.discard(uid)
            if uid in self.pending_targets:
                theta = self.pending_targets[uid]
            else:
                theta = rec.track_for(uid).theta_ref
            uav.waypoint = fi.point_on_front(f, theta)
            uav.waypoint_vel = (0.0, 0.0)
            uav.has_waypoint = True
            uav.mode = ve.UavMode.ALIGN if detector else ve.UavMode.ATTRACTED

    def _baseline_join(self, swarm: SwarmState, fid: int,
                       t_now: float) -> None:
        """A lone baseline UAV joins a fire; no merge cap, no repulsion."""
        f = self.fires[fid]
        rec = self.records.get(fid)
        uid = swarm.member_ids[0]
        if rec is None:
            rec = mi.FireMitigationRecord(fire_id=fid, swarm_ids=[swarm.id])
            rec.tracks = mi.assign_sectors(f, [(uid, self.uavs[uid].pos)])
            self.records[fid] = rec
            self._enter_mitigation(swarm, fid, rec, t_now, detector=True)
            self._event("lock", t_now, swarm=swarm.id, fire=fid)
            return
        if swarm.id in rec.swarm_ids:
            return
        rec.swarm_ids.append(swarm.id)
        rec.pending_merge.append(uid)
        union = [(t.uav_id, self.uavs[t.uav_id].pos) for t in rec.tracks]
        union += [(u, self.uavs[u].pos) for u in rec.pending_merge]
        prospective = mi.assign_sectors(f, union)
        for tr in prospective:
            if tr.uav_id in rec.pending_merge:
                self.pending_targets[tr.uav_id] = tr.theta_ref
        self._enter_mitigation(swarm, fid, rec, t_now, detector=True)
        self._event("join-request", t_now, swarm=swarm.id, fire=fid)

    def _mitigation_step(self, fid: int, t_now: float) -> None:
        cfg = self.cfg
        f = self.fires[fid]
        rec = self.records[fid]
        if f.state is fi.FireState.EXTINGUISHED:
            return
        dt = cfg.engine.dt

        # Approach and join for assigned members.
        for track in rec.tracks:
            uav = self.uavs[track.uav_id]
            if not track.joined:
                uav.waypoint = fi.point_on_front(f, track.theta_ref)
                uav.waypoint_vel = (0.0, 0.0)
                uav.has_waypoint = True
                if ve.reached(uav.pos, uav.waypoint,
                              cfg.kinematics.cruise_speed, dt):
                    track.joined = True
                    track.join_time = t_now
                    track.theta = track.theta_ref
                    f.joined_uavs.append((uav.id, t_now))
                    uav.mode = ve.UavMode.MITIGATE
                    if f.state is fi.FireState.BURNING:
                        f.state = fi.FireState.UNDER_MITIGATION
                    self._event("join", t_now, uav=uav.id, fire=fid)
                continue
            omega = mi.nominal_angular_velocity(
                f.a, f.b, cfg.mitigation.mitigation_speed, track.theta)
            theta, theta_ref, direction = mi.angular_control(
                track.theta, track.theta_ref, track.direction,
                track.lo, track.hi, omega, cfg.mitigation.track_gain,
                cfg.mitigation.turn_margin, dt,
                cfg.mitigation.use_printed_angular_law)
            track.theta = theta
            track.theta_ref = theta_ref
            track.direction = direction
            uav.waypoint = fi.point_on_front(f, theta)
            sweep = direction * omega
            uav.waypoint_vel = (-f.a * math.sin(theta) * sweep,
                                f.b * math.cos(theta) * sweep)
            uav.has_waypoint = True

        # Pending merge arrivals; repartition once everyone is at the front.
        if rec.pending_merge:
            all_arrived = True
            for uid in rec.pending_merge:
                uav = self.uavs[uid]
                theta = self.pending_targets[uid]
                uav.waypoint = fi.point_on_front(f, theta)
                uav.waypoint_vel = (0.0, 0.0)
                uav.has_waypoint = True
                if not ve.reached(uav.pos, uav.waypoint,
                                  cfg.kinematics.cruise_speed, dt):
                    all_arrived = False
            if all_arrived:
                keep = {t.uav_id: t for t in rec.tracks}
                union = [(t.uav_id, self.uavs[t.uav_id].pos)
                         for t in rec.tracks]
                union += [(u, self.uavs[u].pos) for u in rec.pending_merge]
                rec.tracks = mi.assign_sectors(f, union, keep=keep)
                for track in rec.tracks:
                    if track.uav_id in rec.pending_merge:
                        track.joined = True
                        track.join_time = t_now
                        f.joined_uavs.append((track.uav_id, t_now))
                        self.uavs[track.uav_id].mode = ve.UavMode.MITIGATE
                        self._event("join", t_now, uav=track.uav_id, fire=fid)
                    elif track.joined:
                        # keep swept position continuous inside the new sector
                        track.theta = min(max(track.theta, track.lo), track.hi)
                        track.theta_ref = min(max(track.theta_ref, track.lo),
                                              track.hi)
                for uid in rec.pending_merge:
                    self.pending_targets.pop(uid, None)
                rec.pending_merge.clear()
                if f.state is fi.FireState.BURNING:
                    f.state = fi.FireState.UNDER_MITIGATION

    def _extinguish(self, fid: int, t_now: float) -> None:
        rec = self.records.pop(fid)
        self.extinguished[fid] = t_now
        self._event("extinguish", t_now, fire=fid)
        for uid in rec.pending_merge:
            self.pending_targets.pop(uid, None)
        for sid in rec.swarm_ids:
            swarm = self.swarms[sid]
            swarm.mode = SwarmMode.SEARCH
            swarm.fire_id = None
            swarm.repel_until = -math.inf
            swarm.repel_heading = None
            for uid in swarm.member_ids:
                uav = self.uavs[uid]
                uav.fire_id = None
                uav.mode = ve.UavMode.EXPLORE
                uav.has_waypoint = False
                uav.waypoint_vel = (0.0, 0.0)

    # -- logging and termination ------------------------------------------

    def counters(self) -> tuple[int, int, int, int, int]:
        f_d = len(self.detected)
        ext = len(self.extinguished)
        f_f = f_d - ext
        f_r = len(self.fires) - ext
        s_q = sum(1 for s in self.swarms if s.mode is SwarmMode.MITIGATE)
        s_s = len(self.swarms) - s_q
        return f_d, f_f, f_r, s_s, s_q

    def _log_state(self) -> None:
        f_d, f_f, f_r, s_s, s_q = self.counters()
        total_area = sum(fi.area(f) for f in self.fires
                         if f.state is not fi.FireState.EXTINGUISHED)
        self.series.append((self.time, f_d, f_f, f_r, s_s, s_q, total_area))
        if self.collect_trace:
            self.trace.append({
                "t": round(self.time, 6),
                "uavs": [{"id": u.id, "x": round(u.pos[0], 3),
                          "y": round(u.pos[1], 3), "mode": u.mode.value}
                         for u in self.uavs],
                "fires": [{"id": f.id, "a": round(f.a, 3),
                           "b": round(f.b, 3), "state": f.state.value}
                          for f in self.fires],
                "F_d": f_d, "F_f": f_f, "F_r": f_r,
                "S_s": s_s, "S_q": s_q,
            })

    def done(self) -> bool:
        return (len(self.extinguished) == len(self.fires)
                or self.time >= self.cfg.engine.t_max)


def preposition_mitigation(world: World, fid: int,
                           uav_ids: list[int]) -> None:
    """Place the given UAVs exactly on their sector alignment points of one
    fire and mark them joined at t=0 (simultaneous-join oracle setups)."""
    f = world.fires[fid]
    members = [(uid, world.uavs[uid].pos) for uid in uav_ids]
    rec = mi.FireMitigationRecord(fire_id=fid, swarm_ids=[])
    rec.tracks = mi.assign_sectors(f, members)
    for track in rec.tracks:
        uav = world.uavs[track.uav_id]
        uav.pos = fi.point_on_front(f, track.theta_ref)
        uav.mode = ve.UavMode.MITIGATE
        uav.fire_id = fid
        track.joined = True
        track.join_time = 0.0
        f.joined_uavs.append((track.uav_id, 0.0))
        swarm = world.swarms[uav.swarm_id]
        swarm.mode = SwarmMode.MITIGATE
        swarm.fire_id = fid
        if swarm.id not in rec.swarm_ids:
            rec.swarm_ids.append(swarm.id)
    world.records[fid] = rec
    f.state = fi.FireState.UNDER_MITIGATION
    world.detected.setdefault(fid, 0.0)
    world.detected_area.setdefault(fid, fi.area(f))


def weighted_objective(detected_area_sum: float, undetected_area_sum: float,
                       quench_time_sum: float, w1: float, w2: float,
                       w3: float) -> float:
    """Weighted-sum mission objective; the quench-time budget is reported as
    violation flags elsewhere, never enforced here."""
    return (w1 * detected_area_sum + w2 * undetected_area_sum
            + w3 * quench_time_sum)


def run(cfg: ScenarioConfig, run_index: int,
        collect_trace: bool = False) -> RunResult:
    """Execute one seeded mission and compute its metrics."""
    world = World(cfg, run_index, collect_trace=collect_trace)
    n_f = len(world.fires)
    while not world.done():
        world.tick()

    t_max = cfg.engine.t_max
    all_detected = len(world.detected) == n_f and n_f > 0
    complete = len(world.extinguished) == n_f and n_f > 0
    if n_f == 0:
        detection_time = mission_time = 0.0
        all_detected = complete = True
    else:
        detection_time = (max(world.detected.values())
                          if all_detected else t_max)
        mission_time = (max(world.extinguished.values())
                        if complete else t_max)

    quench_times = {}
    for fid, t_ext in sorted(world.extinguished.items()):
        quench_times[fid] = t_ext - world.detected.get(fid, 0.0)
    violations = [fid for fid, q in quench_times.items()
                  if q >= cfg.objective.quench_time_max]

    detected_area_sum = sum(world.detected_area.values())
    undetected_area_sum = sum(
        fi.area(f) for f in world.fires if f.id not in world.detected)
    if world.total_area0 > 0.0:
        fer = max(0.0, (world.peak_total_area - world.total_area0)
                  / world.total_area0)
    else:
        fer = 0.0
    objective = weighted_objective(
        detected_area_sum, undetected_area_sum, sum(quench_times.values()),
        cfg.objective.w1, cfg.objective.w2, cfg.objective.w3)

    return RunResult(
        run_index=run_index, strategy=cfg.engine.strategy,
        n_swarms=cfg.n_swarms, detection_time=detection_time,
        mission_time=mission_time, fer=fer, objective=objective,
        complete=complete, all_detected=all_detected,
        quench_times=quench_times, quench_violations=violations,
        detected_area_sum=detected_area_sum,
        undetected_area_sum=undetected_area_sum,
        series=world.series, events=world.events,
        trace=world.trace if collect_trace else None)


def _run_job(args) -> RunResult:
    cfg, idx = args
    return run(cfg, idx)


def monte_carlo(cfg: ScenarioConfig, n_runs: int,
                jobs: int = 1) -> list[RunResult]:
    """Independent seeded runs; results ordered by run index regardless of
    the parallelism degree."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    if jobs <= 1:
        results = [run(cfg, i) for i in range(n_runs)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_job,
                                    [(cfg, i) for i in range(n_runs)]))
    return sorted(results, key=lambda r: r.run_index)


def summarize(results: list[RunResult]) -> dict:
    """Mean/std/quartiles of the headline metrics (stable aggregation)."""
    out = {"n_runs": len(results),
           "n_complete": sum(1 for r in results if r.complete)}
    for name in ("detection_time", "mission_time", "fer", "objective"):
        vals = np.array([getattr(r, name) for r in results], dtype=float)
        out[name] = {
            "mean": float(np.mean(vals)),
            "std": float(np.std(vals)),
            "q25": float(np.percentile(vals, 25)),
            "median": float(np.percentile(vals, 50)),
            "q75": float(np.percentile(vals, 75)),
        }
    return out
