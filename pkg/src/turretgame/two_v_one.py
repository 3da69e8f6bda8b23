"""Two attackers versus the turret under a fixed capture order.

When the turret must capture both attackers, order matters: the first (the
"runner") is chased down while the second (the "penetrator") spends the
chase closing on the perimeter from the far side. The runner's best delaying
play is to fly perpendicular to its final line of sight, which makes the
total pointer rotation spent capturing it the smallest root above theta_rel
of the runner equation

    r sin(x - theta_rel) = nu x .

Capture occurs at radius r cos(x - theta_rel). A root with capture radius
below 1 means the runner slips inside the perimeter before the pointer
arrives; no root at all means it escapes outright. Either way the chosen
order fails, reported as NoCaptureError.

The team value against the order is the penetrator's duel value plus twice
the runner rotation: the pointer sweeps away from the penetrator to take the
runner and must sweep back, paying the rotation twice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

from .angles import sgn, signed_diff
from .arcs import Arc, ArcSet
from .model import AttackerPolar, GameState
from .one_v_one import duel_value, win_half_width

# first-sign-change scan resolution and bisection depth for the runner equation
SCAN_CELLS = 1024
BISECT_STEPS = 80
# bisection depth for arc boundaries in turret-angle space
BOUNDARY_STEPS = 48


class NoCaptureError(Exception):
    """The designated runner cannot be viably captured from this geometry."""


@dataclass(frozen=True)
class RunnerCapture:
    """Outcome of a viable runner chase."""

    rotation: float  # total pointer rotation until capture, >= theta_rel
    capture_radius: float  # runner radius at capture, >= 1


def escape_limit(r: float, nu: float) -> float:
    """Largest theta_rel from which a runner at radius r is viably captured:
    sqrt(r^2 - 1)/nu - acos(1/r). Beyond it the runner reaches the perimeter
    (or escapes the pointer entirely) before capture."""
    if r < 1.0:
        raise ValueError(f"attacker already inside the perimeter: r={r}")
    return math.sqrt(r * r - 1.0) / nu - math.acos(1.0 / r)


def runner_capture(r: float, theta_rel: float, nu: float) -> RunnerCapture:
    """Solve the runner equation for the smallest root above theta_rel.

    theta_rel is the runner's angular offset from the pointer, in [0, pi).
    The scan-and-bisect search brackets the first sign change of
    g(x) = r sin(x - theta_rel) - nu x over [theta_rel, theta_rel + pi];
    the returned rotation satisfies g to well under 1e-10. Raises
    NoCaptureError when no root exists or capture would fall inside the
    perimeter. A sign change narrower than one scan cell can only occur
    near tangency, where the capture radius is below 1 anyway.
    """
    if r < 1.0:
        raise ValueError(f"attacker already inside the perimeter: r={r}")
    if not (0.0 <= theta_rel < math.pi):
        raise ValueError(f"theta_rel must be in [0, pi), got {theta_rel}")
    if theta_rel == 0.0:
        return RunnerCapture(0.0, r)
    sin = math.sin
    step = math.pi / SCAN_CELLS
    a = theta_rel
    b = None
    for k in range(1, SCAN_CELLS + 1):
        x = theta_rel + k * step
        if r * sin(x - theta_rel) - nu * x > 0.0:
            b = x
            break
        a = x
    if b is None:
        raise NoCaptureError(
            f"runner escapes: no rotation captures r={r}, theta_rel={theta_rel}, nu={nu}"
        )
    for _ in range(BISECT_STEPS):
        m = 0.5 * (a + b)
        if r * sin(m - theta_rel) - nu * m > 0.0:
            b = m
        else:
            a = m
    rotation = 0.5 * (a + b)
    capture_radius = r * math.cos(rotation - theta_rel)
    if capture_radius < 1.0:
        raise NoCaptureError(
            f"runner reaches the perimeter first: capture radius {capture_radius:.6f}"
        )
    return RunnerCapture(rotation, capture_radius)


def _frame(runner: AttackerPolar, pen: AttackerPolar, theta_t: float):
    """Mirror the configuration so the penetrator sits counterclockwise of the
    runner. Returns (side, separation, turret offset): side is +1 when no
    mirroring was needed; offsets are measured from the runner, positive
    toward the penetrator, unwrapped so the turret offset lives in (-pi, pi]."""
    gap = signed_diff(pen.theta, runner.theta)
    side = sgn(gap)
    return side, abs(gap), side * signed_diff(theta_t, runner.theta)


def team_value(state: GameState, order: Tuple[int, int], nu: float) -> float:
    """Value of taking both attackers in the given order (first entry is the
    runner): penetrator duel value plus twice the runner rotation. Nonpositive
    means both are captured under optimal play. Assumes the pointer starts
    between the attackers or behind the runner, the configurations from which
    the order is meaningful. Raises NoCaptureError if the runner is not
    viably capturable."""
    runner = state.attackers[order[0]]
    pen = state.attackers[order[1]]
    _, sep, u = _frame(runner, pen, state.theta_t)
    cap = runner_capture(runner.r, abs(u), nu)
    return duel_value(pen.r, sep - u, nu) + 2.0 * cap.rotation


def wins(theta_t: float, a1: AttackerPolar, a2: AttackerPolar,
         order: Tuple[int, int], nu: float) -> bool:
    """Membership of a pointer angle in win_arc without constructing it.

    One runner-equation solve at most: the value is monotone in the pointer
    offset, so a sign test at the queried angle decides membership exactly.
    """
    attackers = (a1, a2)
    runner = attackers[order[0]]
    pen = attackers[order[1]]
    _, sep, u = _frame(runner, pen, theta_t)
    if duel_value(pen.r, sep, nu) > 0.0:
        return False  # penetrator breaches even with an instant runner capture
    if u > sep:
        # past the penetrator the short way means behind the runner the long
        # way around; member only if the runner's duel reach covers that span
        # (win_arc caps its back edge at the penetrator in the same way)
        return u - 2.0 * math.pi >= max(
            -win_half_width(runner.r, nu), sep - 2.0 * math.pi
        )
    if u <= 0.0:
        # behind the runner: capturing it sweeps toward the penetrator too,
        # so the runner's own duel arc is the binding edge
        return duel_value(runner.r, u, nu) <= 0.0
    if u > escape_limit(runner.r, nu):
        return False
    try:
        cap = runner_capture(runner.r, u, nu)
    except NoCaptureError:
        return False
    return duel_value(pen.r, sep - u, nu) + 2.0 * cap.rotation <= 0.0


def bisect_last_true(lo: float, hi: float, pred: Callable[[float], bool],
                     steps: int = BOUNDARY_STEPS) -> float:
    """Boundary of a predicate that is true at lo and false at hi, assuming a
    single transition. Returns the midpoint of the final bracket."""
    a, b = lo, hi
    for _ in range(steps):
        m = 0.5 * (a + b)
        if pred(m):
            a = m
        else:
            b = m
    return 0.5 * (a + b)


def _value_slope(r_run: float, pen_r: float, sep: float, nu: float,
                 u: float) -> Tuple[float, float]:
    """Team value at pointer offset u from the runner (toward the penetrator)
    and its derivative in u. Differentiating the runner equation gives the
    rotation slope a/(a - 1) with a = capture_radius/nu, so the value slope is
    (a + 1)/(a - 1): positive, and bounded on the viable range since a >= 1/nu
    there."""
    cap = runner_capture(r_run, u, nu)
    a = cap.capture_radius / nu
    value = duel_value(pen_r, sep - u, nu) + 2.0 * cap.rotation
    return value, (a + 1.0) / (a - 1.0)


def _far_edge(r_run: float, pen_r: float, sep: float, nu: float) -> float:
    """Largest pointer offset from the runner from which the order still
    wins, capped at the penetrator and at the viable-chase limit. The value
    is increasing and convex in the offset, so Newton from the cap converges
    monotonically from above; the caller guarantees the value at offset 0 is
    nonpositive."""
    hi = min(sep, escape_limit(r_run, nu))
    u = hi
    v = slope = None
    for k in range(4):
        try:
            v, slope = _value_slope(r_run, pen_r, sep, nu, u)
            break
        except NoCaptureError:
            # capture radius rounded just below 1 at the cap; probe inside
            u = hi - max(1e-12, 2.0 ** k * 1e-12 * hi)
    if v is None:
        def inside(w: float) -> bool:
            try:
                return _value_slope(r_run, pen_r, sep, nu, w)[0] <= 0.0
            except NoCaptureError:
                return False
        return bisect_last_true(0.0, hi, inside)
    if v <= 0.0:
        # the cap itself binds (the raise at hi, if any, was rounding noise)
        return hi
    for _ in range(60):
        step = v / slope
        u = max(u - step, 0.0)
        v, slope = _value_slope(r_run, pen_r, sep, nu, u)
        if abs(v) < 1e-13 or step < 1e-14:
            break
    return u


def win_arc(a1: AttackerPolar, a2: AttackerPolar, order: Tuple[int, int],
            nu: float) -> ArcSet:
    """Pointer angles from which the turret captures both attackers in the
    given order. A single arc: from the runner-side duel edge (capturing the
    runner while sweeping toward the penetrator) across the runner to the far
    offset where the team value crosses zero or the runner chase stops being
    viable, whichever comes first. Empty if the penetrator cannot be stopped
    even with an instant runner capture."""
    attackers = (a1, a2)
    runner = attackers[order[0]]
    pen = attackers[order[1]]
    side, sep, _ = _frame(runner, pen, 0.0)
    if duel_value(pen.r, sep, nu) > 0.0:
        return ArcSet.empty()
    far = _far_edge(runner.r, pen.r, sep, nu)
    # never extend behind the runner so far that the arc wraps onto the
    # penetrator's far side
    near = max(-win_half_width(runner.r, nu), sep - 2.0 * math.pi)
    center = runner.theta + side * 0.5 * (near + far)
    return ArcSet.from_arcs([Arc(center, 0.5 * (far - near))])


def attacker_controls(state: GameState, order: Tuple[int, int],
                      nu: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Optimal attacker play for the order, indexed by attacker: the runner
    flies full speed perpendicular to its final line of sight, the penetrator
    flies its duel tangent ahead of the returning sweep. The penetrator's
    effective duel offset is sep - u, unwrapped in the sweep direction, so
    its tangent sign is the frame side rather than the sign of the wrapped
    pointer offset; the two agree except when the pointer sits far behind
    the runner. Raises NoCaptureError when the runner chase is not viable."""
    runner = state.attackers[order[0]]
    pen = state.attackers[order[1]]
    side, _, u = _frame(runner, pen, state.theta_t)
    cap = runner_capture(runner.r, abs(u), nu)
    los_offset = cap.rotation - abs(u)
    # the runner reacts to the side the pointer actually approaches from
    runner_ctrl = (nu, -side * sgn(u) * (0.5 * math.pi - los_offset))
    pen_ctrl = (nu, side * math.asin(nu / pen.r))
    out = [None, None]
    out[order[0]] = runner_ctrl
    out[order[1]] = pen_ctrl
    return (out[0], out[1])


def rotation_sensitivity(r: float, theta_rel: float, nu: float) -> float:
    """Rate of change of the runner rotation as the pointer angle advances
    toward the runner: -a/(a - 1) with a = capture_radius/nu. Always below -1
    for viable captures: closing on the runner saves more rotation than the
    pointer spends, which is what lets a retreating region outrun the
    pointer."""
    cap = runner_capture(r, theta_rel, nu)
    a = cap.capture_radius / nu
    if a <= 1.0:
        raise ValueError("sensitivity undefined at tangency (capture radius = nu)")
    return -a / (a - 1.0)
