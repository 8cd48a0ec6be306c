"""Waypoint generation for the cooperative information-driven search and
for the baseline strategies (uniform, normal, levy, multi-level switching).

Exploration takes long heavy-tailed steps; exploitation takes short
folded-normal steps; both are aimed inside a heading cone centered on the
direction of the swarm member with the highest temperature gradient.  The
cone half-width widens with the hottest temperature sensed by the swarm.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Wrap to (-pi, pi]."""
    a = math.fmod(angle + math.pi, TWO_PI)
    if a <= 0.0:
        a += TWO_PI
    return a - math.pi


def max_info_member(temp_rates: dict[int, float]) -> int:
    """Member with the highest temperature gradient; ties to lowest id."""
    if not temp_rates:
        raise ValueError("no members with readings")
    best_id = None
    best = -math.inf
    for uid in sorted(temp_rates):
        r = temp_rates[uid]
        if r > best:
            best = r
            best_id = uid
    return best_id


def search_cone_halfwidth(temp_max: float, cone_gain: float,
                          cone_rate: float) -> float:
    """Logistic half-width of the heading cone (rad)."""
    return cone_gain / (1.0 + math.exp(-cone_rate * temp_max))


def sample_heading(phi_center: float, phi0: float,
                   rng: np.random.Generator) -> float:
    """Uniform draw on [phi_center - phi0, phi_center + phi0], wrapped."""
    return wrap_angle(phi_center + rng.uniform(-phi0, phi0))


def sample_levy_length(rng: np.random.Generator, tail_exponent: float,
                       l_max: float) -> float:
    """Heavy-tailed step factor: inverse-CDF draw from a Pareto with
    P(l > x) ~ x**-tail_exponent, truncated at l_max (l >= 1)."""
    u = rng.random()
    tail = l_max ** (-tail_exponent)
    return (1.0 - u * (1.0 - tail)) ** (-1.0 / tail_exponent)


def sample_brown_length(rng: np.random.Generator) -> float:
    """Short-step factor |N(0, 1)|."""
    return abs(rng.standard_normal())


def sample_step_length(explore: bool, rng: np.random.Generator,
                       tail_exponent: float, l_max: float) -> float:
    """Dimensionless step factor for the active search stage."""
    if explore:
        return sample_levy_length(rng, tail_exponent, l_max)
    return sample_brown_length(rng)


def select_explore(temp_max: float, temp_threshold: float) -> bool:
    """Stage switch: explore strictly below the temperature threshold,
    exploit at or above it.  Re-evaluated every tick, no hysteresis."""
    return temp_max < temp_threshold


def clamp_to_area(p: tuple[float, float],
                  area: tuple[float, float]) -> tuple[float, float]:
    return (min(max(p[0], 0.0), area[0]), min(max(p[1], 0.0), area[1]))


def next_waypoint(p_info: tuple[float, float], heading: float,
                  step_scale: float, length: float,
                  area: tuple[float, float],
                  center_pred: tuple[float, float],
                  swarm_radius: float) -> tuple[float, float]:
    """Stochastic waypoint around the max-information member's position,
    clamped into the search area, then projected onto the swarm disk about
    the predicted swarm center to preserve swarm extent."""
    step = step_scale * length
    raw = (p_info[0] + step * math.cos(heading),
           p_info[1] + step * math.sin(heading))
    raw = clamp_to_area(raw, area)
    dx = raw[0] - center_pred[0]
    dy = raw[1] - center_pred[1]
    dist = math.hypot(dx, dy)
    if dist > swarm_radius:
        scale = swarm_radius / dist
        raw = (center_pred[0] + dx * scale, center_pred[1] + dy * scale)
    return clamp_to_area(raw, area)


def baseline_waypoint(strategy: str, pos: tuple[float, float],
                      vel: tuple[float, float], temperature: float,
                      temp_rate: float, rng: np.random.Generator,
                      area: tuple[float, float], search_params,
                      temp_threshold: float) -> tuple[float, float]:
    """Independent per-UAV waypoint for the comparison strategies.

    UNIFORM resamples anywhere in the area; NORMAL and LEVY step from the
    current position at a uniform heading; OMS approximates a multi-level
    switching search (levy legs while cool, short legs while hot, heading
    biased along the current velocity when the temperature is rising).
    """
    diag = math.hypot(area[0], area[1])
    l_max = diag / search_params.levy_step
    if strategy == "UNIFORM":
        return (rng.uniform(0.0, area[0]), rng.uniform(0.0, area[1]))
    if strategy == "NORMAL":
        heading = rng.uniform(-math.pi, math.pi)
        step = search_params.brown_step * sample_brown_length(rng)
    elif strategy == "LEVY":
        heading = rng.uniform(-math.pi, math.pi)
        step = search_params.levy_step * sample_levy_length(
            rng, search_params.levy_tail_exponent, l_max)
    elif strategy == "OMS":
        if temp_rate > 0.0 and (vel[0] != 0.0 or vel[1] != 0.0):
            phi = math.atan2(vel[1], vel[0])
            heading = sample_heading(phi, 0.25 * math.pi, rng)
        else:
            heading = rng.uniform(-math.pi, math.pi)
        if temperature < temp_threshold:
            step = search_params.levy_step * sample_levy_length(
                rng, search_params.levy_tail_exponent, l_max)
        else:
            step = search_params.brown_step * sample_brown_length(rng)
    else:
        raise ValueError(f"unknown baseline strategy: {strategy}")
    return clamp_to_area((pos[0] + step * math.cos(heading),
                          pos[1] + step * math.sin(heading)), area)
