"""Angle bookkeeping on the unit circle.

All angles are radians. The canonical interval is (-pi, pi]; every function
here returns canonical values so downstream code never reasons about wrap.
Positive rotation is counterclockwise.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi

# rotation direction tokens used by boundary queries and policies
CCW = "ccw"
CW = "cw"


def canonical(theta: float) -> float:
    """Map an angle to (-pi, pi]. Both pi and -pi map to pi. Angles already
    in the interval pass through bit-unchanged."""
    if -math.pi < theta <= math.pi:
        return theta
    return math.pi - (math.pi - theta) % TWO_PI


def signed_diff(a: float, b: float) -> float:
    """Shortest signed rotation from b to a, in (-pi, pi]. Positive is CCW."""
    return canonical(a - b)


def sgn(x: float) -> float:
    """Sign of x with the tie broken upward: sgn(0) = +1."""
    return 1.0 if x >= 0.0 else -1.0


def directional_gap(frm: float, to: float, direction: str) -> float:
    """Rotation in [0, 2pi) needed to move from `frm` to `to` in `direction`."""
    if direction == CCW:
        return (to - frm) % TWO_PI
    if direction == CW:
        return (frm - to) % TWO_PI
    raise ValueError(f"direction must be {CCW!r} or {CW!r}, got {direction!r}")
