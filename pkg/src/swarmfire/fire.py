"""Elliptical fire fronts: spread dynamics, quench bookkeeping and
equal-area sector geometry.

A fire is an axis-aligned ellipse with fixed center whose semi-axes grow at
a constant rate; quenching removes area while holding a - b constant, so a
circle stays circular and an ellipse keeps its elongation while shrinking.
All operations are deterministic value manipulations.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

TWO_PI = 2.0 * math.pi

# Below this residual area (m^2) a fire is declared extinguished; avoids
# chasing an asymptotic tail of vanishing ellipses.
EXTINGUISH_AREA = 1.0

_DIST_TOL = 1.0e-10  # parameter tolerance for nearest-boundary search


class FireState(enum.Enum):
    UNLIT_KNOWN = "unlit-known"
    BURNING = "burning"
    UNDER_MITIGATION = "under-mitigation"
    EXTINGUISHED = "extinguished"


@dataclass
class FireFront:
    """One fire: geometry, lifecycle state and quench bookkeeping."""
    id: int
    center: tuple[float, float]
    a: float
    b: float
    spread: float = 0.0               # m/s added to both semi-axes
    state: FireState = FireState.BURNING
    joined_uavs: list[tuple[int, float]] = field(default_factory=list)
    quenched_area_total: float = 0.0


def fireline_intensity(flame_length: float, alpha: float, beta: float) -> float:
    """Heat release rate per unit length of front (kW/m)."""
    return alpha * flame_length ** beta


def spread_rate(intensity: float, heat_of_combustion: float,
                fuel_mass: float) -> float:
    """Constant axis growth rate (m/s) from fireline intensity."""
    return intensity / (heat_of_combustion * fuel_mass)


def area(fire: FireFront) -> float:
    """Current burning area pi*a*b (m^2)."""
    return math.pi * fire.a * fire.b


def grow(fire: FireFront, dt: float) -> FireFront:
    """Advance both semi-axes by spread*dt; no-op once extinguished."""
    if fire.state in (FireState.BURNING, FireState.UNDER_MITIGATION):
        fire.a += fire.spread * dt
        fire.b += fire.spread * dt
    return fire


def sweep_angle(a: float, b: float, gamma: float) -> float:
    """Continuous, strictly increasing extension of atan((a/b)*tan(gamma)).

    Maps the polar angle gamma of an ellipse point to its parametric angle;
    the principal-branch arctan is wrong past pi/2, so the quadrant-aware
    form with unwrapping is used.  sweep_angle(0) = 0, sweep_angle(2pi) = 2pi.
    """
    t = math.atan2(a * math.sin(gamma), b * math.cos(gamma))
    # t and gamma always lie in the same quadrant, so |gamma - t| < pi/2 and
    # rounding recovers the correct 2pi multiple.
    return t + TWO_PI * round((gamma - t) / TWO_PI)


def inverse_sweep_angle(a: float, b: float, t: float) -> float:
    """Polar angle whose sweep_angle equals the parametric angle t."""
    g = math.atan2(b * math.sin(t), a * math.cos(t))
    return g + TWO_PI * round((t - g) / TWO_PI)


def sector_area(fire: FireFront, gamma_lo: float, gamma_hi: float) -> float:
    """Area (m^2) of the angular sector between two polar angles."""
    if not (0.0 <= gamma_lo < gamma_hi <= TWO_PI):
        raise ValueError(
            f"sector bounds out of range: [{gamma_lo}, {gamma_hi}]")
    return 0.5 * fire.a * fire.b * (sweep_angle(fire.a, fire.b, gamma_hi)
                                    - sweep_angle(fire.a, fire.b, gamma_lo))


def partition_sectors(fire: FireFront, n: int) -> list[float]:
    """Polar-angle boundaries of n equal-area sectors, starting at 0.

    Equal areas correspond to equally spaced parametric angles, so each
    boundary is the exact inverse of the sweep-angle map; no iteration
    tolerance is involved.
    """
    if n < 1:
        raise ValueError("sector count must be >= 1")
    bounds = [0.0]
    for m in range(1, n):
        bounds.append(inverse_sweep_angle(fire.a, fire.b, TWO_PI * m / n))
    bounds.append(TWO_PI)
    return bounds


def point_on_front(fire: FireFront, theta: float) -> tuple[float, float]:
    """Boundary point at parametric angle theta."""
    cx, cy = fire.center
    return (cx + fire.a * math.cos(theta), cy + fire.b * math.sin(theta))


def _quadrant_param(a: float, b: float, x: float, y: float) -> float:
    """Parametric angle of the boundary point nearest to (x, y), both >= 0,
    point strictly outside the ellipse.

    Safeguarded Newton on the nearest-point stationarity condition with a
    guaranteed bisection bracket: g(0) = b*y >= 0, g(pi/2) = -a*x <= 0.
    """
    if a == b:
        return math.atan2(y, x)
    if y == 0.0:
        return 0.0
    if x == 0.0:
        return 0.5 * math.pi
    c = a * a - b * b
    lo, hi = 0.0, 0.5 * math.pi
    t = math.atan2(a * y, b * x)
    for _ in range(100):
        st, ct = math.sin(t), math.cos(t)
        g = c * st * ct - x * a * st + y * b * ct
        if g > 0.0:
            lo = t
        else:
            hi = t
        dg = c * (ct * ct - st * st) - x * a * ct - y * b * st
        if dg != 0.0:
            t_new = t - g / dg
        else:
            t_new = 0.5 * (lo + hi)
        if not (lo < t_new < hi):
            t_new = 0.5 * (lo + hi)
        if abs(t_new - t) < _DIST_TOL:
            return t_new
        t = t_new
    return t


def boundary_distance(a: float, b: float, dx: float, dy: float) -> float:
    """Distance from a point (offset dx, dy from center) to the ellipse
    boundary; 0 if the point is inside or on it."""
    x, y = abs(dx), abs(dy)
    if (x / a) ** 2 + (y / b) ** 2 <= 1.0:
        return 0.0
    if a == b:
        return math.hypot(x, y) - a
    t = _quadrant_param(a, b, x, y)
    return math.hypot(x - a * math.cos(t), y - b * math.sin(t))


def distance_to_front(fire: FireFront, p: tuple[float, float]) -> float:
    """Euclidean distance from p to the nearest front point; 0 inside."""
    cx, cy = fire.center
    return boundary_distance(fire.a, fire.b, p[0] - cx, p[1] - cy)


def nearest_front_point(fire: FireFront, p: tuple[float, float]) -> tuple[float, float]:
    """Closest boundary point to p.  For interior points the boundary point
    in p's polar direction is returned (any front point is equally 'nearest'
    for bearing purposes once inside)."""
    cx, cy = fire.center
    dx, dy = p[0] - cx, p[1] - cy
    x, y = abs(dx), abs(dy)
    if (x / fire.a) ** 2 + (y / fire.b) ** 2 <= 1.0:
        t = math.atan2(dy, dx)
        return point_on_front(fire, t)
    t = _quadrant_param(fire.a, fire.b, x, y)
    bx = fire.a * math.cos(t) * (1.0 if dx >= 0 else -1.0)
    by = fire.b * math.sin(t) * (1.0 if dy >= 0 else -1.0)
    return (cx + bx, cy + by)


def apply_quench(fire: FireFront, n_active: int, area_rate: float,
                 dt: float) -> FireFront:
    """One quench step: net area = current + growth - n_active*rate*dt.

    The axes are resized to enclose the net area with a - b held constant
    (positive root of the area quadratic).  Dropping to EXTINGUISH_AREA or
    below ends the fire's life.
    """
    if fire.state is not FireState.UNDER_MITIGATION:
        return fire
    grown_a = fire.a + fire.spread * dt
    grown_b = fire.b + fire.spread * dt
    removed = n_active * area_rate * dt
    net = max(0.0, math.pi * grown_a * grown_b - removed)
    d = fire.a - fire.b
    new_b = 0.5 * (-d + math.sqrt(d * d + 4.0 * net / math.pi))
    fire.a = new_b + d
    fire.b = new_b
    fire.quenched_area_total += removed
    if net <= EXTINGUISH_AREA:
        fire.state = FireState.EXTINGUISHED
    return fire
