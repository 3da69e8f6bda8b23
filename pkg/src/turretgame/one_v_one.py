"""Single attacker versus the turret: value, winning arc, optimal play.

Geometry: the turret pivots at the origin of the unit-disk perimeter it
defends; an attacker at polar (r, theta) moves at speed nu <= 1 while the
turret's pointer rotates at unit rate. Attacker headings phi are measured
from the inward radial direction, positive toward counterclockwise, so the
dynamics are r' = -v cos(phi), theta' = v sin(phi) / r.

The closed-form solution rests on one scalar function of (r, nu): the time
an attacker needs to fly its best inward path from radius r, less the angle
that path subtends at the origin (`angular_slack`). The attacker's best path
is the straight line tangent to the circle of radius nu about the origin; on
it the turret gains pointer angle at net rate 1 relative to the attacker's
subtended angle, which is what makes the slack difference the value.
"""

from __future__ import annotations

import math
from typing import Tuple

from .angles import sgn
from .arcs import Arc, ArcSet
from .model import AttackerPolar


def angular_slack(r: float, nu: float) -> float:
    """sqrt((r/nu)^2 - 1) - acos(nu/r): tangent-path flight time minus the
    subtended angle. Increasing in r, zero has no special meaning; only
    differences matter. Requires r >= nu."""
    if r < nu:
        raise ValueError(f"angular_slack needs r >= nu, got r={r}, nu={nu}")
    q = r / nu
    return math.sqrt(max(q * q - 1.0, 0.0)) - math.acos(min(nu / r, 1.0))


def win_half_width(r: float, nu: float) -> float:
    """Half-width of the turret's winning arc about an attacker at radius r:
    the largest |theta_rel| from which the pointer still reaches the attacker
    before it can reach the perimeter. Requires r >= 1."""
    if r < 1.0:
        raise ValueError(f"attacker already inside the perimeter: r={r}")
    return angular_slack(r, nu) - angular_slack(1.0, nu)


def duel_value(r: float, theta_rel: float, nu: float) -> float:
    """Value of the single-attacker game: |theta_rel| - win_half_width(r, nu).
    Nonpositive means the turret captures under optimal play; positive means
    the attacker breaches. theta_rel is the attacker angle relative to the
    pointer."""
    return abs(theta_rel) - win_half_width(r, nu)


def win_arc(a: AttackerPolar, nu: float) -> ArcSet:
    """Pointer angles from which the turret wins the duel: the closed arc of
    half-width win_half_width about the attacker's angle. Zero half-width
    (attacker on the perimeter) leaves a single-point arc."""
    return ArcSet.from_arcs([Arc(a.theta, win_half_width(a.r, nu))])


def attacker_controls(r: float, theta_rel: float, nu: float) -> Tuple[float, float]:
    """Optimal attacker play (speed, heading): full speed along the tangent
    to the nu-circle, fleeing the pointer's approach side. The same heading is
    optimal whether the attacker escapes or is captured. Ties at theta_rel = 0
    break toward the counterclockwise side."""
    if r < nu:
        raise ValueError(f"no tangent heading inside the nu-circle: r={r}, nu={nu}")
    return nu, sgn(theta_rel) * math.asin(min(nu / r, 1.0))


def turret_rate(theta_rel: float) -> float:
    """Optimal pointer rate against one attacker: full speed toward it."""
    return sgn(theta_rel)


def boundary_rate(r: float, phi: float, v: float, nu: float) -> float:
    """Angular rate at which the near edge of the winning arc retreats from
    an approaching pointer while the attacker flies (v, phi) from radius r.
    Maximized over phi at the tangent heading, where it equals v / nu
    regardless of r: an attacker can push its guarded edge no faster than its
    speed fraction allows. Requires r >= 1 >= nu."""
    if r < 1.0:
        raise ValueError(f"attacker already inside the perimeter: r={r}")
    return v * math.sin(phi) / r + v * math.cos(phi) * math.sqrt(
        1.0 / (nu * nu) - 1.0 / (r * r)
    )
