"""Closed arcs on the circle and normalized finite unions of them.

An Arc is the closed set of angles within half_width of center; half_width pi
(or more) means the whole circle. An ArcSet keeps its arcs sorted, pairwise
disjoint and non-touching: arcs that overlap or share an endpoint are merged
during normalization, so equal sets have equal representations. Zero-width
arcs (single points) are legitimate members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from .angles import CCW, CW, TWO_PI, canonical, directional_gap

# slack for merging endpoints that touch up to float rounding
MERGE_EPS = 1e-12


@dataclass(frozen=True)
class Arc:
    """Closed arc: all angles within half_width of center."""

    center: float
    half_width: float

    def __post_init__(self):
        if self.half_width < 0.0:
            raise ValueError(f"half_width must be >= 0, got {self.half_width}")
        object.__setattr__(self, "center", canonical(self.center))
        object.__setattr__(self, "half_width", min(self.half_width, math.pi))

    @property
    def start(self) -> float:
        """CW endpoint (canonical)."""
        return canonical(self.center - self.half_width)

    @property
    def end(self) -> float:
        """CCW endpoint (canonical)."""
        return canonical(self.center + self.half_width)

    @property
    def width(self) -> float:
        return 2.0 * self.half_width

    def contains(self, theta: float) -> bool:
        return abs(canonical(theta - self.center)) <= self.half_width


_FULL = (Arc(0.0, math.pi),)


class ArcSet:
    """Normalized union of closed arcs. Construct via from_arcs/empty/full."""

    __slots__ = ("arcs",)

    def __init__(self, arcs: Tuple[Arc, ...]):
        # callers should use the factories; this trusts `arcs` is normalized
        object.__setattr__(self, "arcs", arcs)

    def __setattr__(self, name, value):
        raise AttributeError("ArcSet is immutable")

    def __eq__(self, other):
        return isinstance(other, ArcSet) and self.arcs == other.arcs

    def __hash__(self):
        return hash(self.arcs)

    def __repr__(self):
        if self.is_empty:
            return "ArcSet(empty)"
        if self.is_full:
            return "ArcSet(full)"
        parts = ", ".join(f"({a.center:+.6f} +- {a.half_width:.6f})" for a in self.arcs)
        return f"ArcSet({parts})"

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.arcs)

    @staticmethod
    def empty() -> "ArcSet":
        return ArcSet(())

    @staticmethod
    def full() -> "ArcSet":
        return ArcSet(_FULL)

    @staticmethod
    def from_arcs(arcs: Iterable[Arc]) -> "ArcSet":
        """Normalize: sort, merge overlapping or touching arcs, detect full
        cover. Arcs that survive untouched are reused as-is, which makes
        normalization bit-exact idempotent."""
        spans = []
        for a in arcs:
            if a.half_width >= math.pi:
                return ArcSet.full()
            s = canonical(a.center - a.half_width)
            if s == math.pi:
                s = -math.pi
            spans.append([s, s + a.width, a])
        if not spans:
            return ArcSet.empty()
        spans.sort(key=lambda t: (t[0], t[1]))
        merged = [spans[0]]
        for span in spans[1:]:
            last = merged[-1]
            if span[0] <= last[1] + MERGE_EPS:
                last[1] = max(last[1], span[1])
                last[2] = None  # combined span: the source arc no longer applies
            else:
                merged.append(span)
        # wrap: the last span may reach past pi and swallow spans near -pi
        while len(merged) > 1:
            ls, le, _ = merged[-1]
            fs, fe, _ = merged[0]
            if le - TWO_PI >= fs - MERGE_EPS:
                merged[-1] = [ls, max(le, fe + TWO_PI), None]
                merged.pop(0)
            else:
                break
        if len(merged) == 1 and merged[0][1] - merged[0][0] >= TWO_PI - MERGE_EPS:
            return ArcSet.full()
        merged.sort(key=lambda t: (t[0], t[1]))
        out = tuple(
            src if src is not None else Arc(canonical(0.5 * (s + e)), 0.5 * (e - s))
            for s, e, src in merged
        )
        return ArcSet(out)

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def is_full(self) -> bool:
        return self.arcs == _FULL

    @property
    def measure(self) -> float:
        """Total angular measure, in [0, 2pi]."""
        return sum(a.width for a in self.arcs)

    def contains(self, theta: float) -> bool:
        return any(a.contains(theta) for a in self.arcs)

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet.from_arcs(self.arcs + other.arcs)

    def intersect(self, other: "ArcSet") -> "ArcSet":
        if self.is_full:
            return other
        if other.is_full:
            return self
        pieces = []
        for a in self.arcs:
            sa = a.center - a.half_width
            ea = a.center + a.half_width
            for b in other.arcs:
                # try b shifted by whole turns so linear overlap finds wrap cases
                for k in (-1, 0, 1):
                    sb = b.center - b.half_width + k * TWO_PI
                    eb = b.center + b.half_width + k * TWO_PI
                    lo = max(sa, sb)
                    hi = min(ea, eb)
                    if hi >= lo:
                        pieces.append(Arc(0.5 * (lo + hi), 0.5 * (hi - lo)))
        return ArcSet.from_arcs(pieces)

    def complement(self) -> "ArcSet":
        """Closure of the complement (boundary points belong to both sides)."""
        if self.is_empty:
            return ArcSet.full()
        if self.is_full:
            return ArcSet.empty()
        gaps = []
        n = len(self.arcs)
        for i in range(n):
            e = self.arcs[i].center + self.arcs[i].half_width
            nxt = self.arcs[(i + 1) % n]
            s = nxt.center - nxt.half_width
            gap = (s - e) % TWO_PI
            gaps.append(Arc(e + 0.5 * gap, 0.5 * gap))
        return ArcSet.from_arcs(gaps)

    def boundary_angles(self) -> Tuple[float, ...]:
        """Endpoints of all arcs; empty for the empty set and the full circle."""
        if self.is_empty or self.is_full:
            return ()
        out = []
        for a in self.arcs:
            out.append(a.start)
            if a.half_width > 0.0:
                out.append(a.end)
        return tuple(out)


def boundary_distance(theta: float, s: ArcSet, direction: str) -> float:
    """Smallest rotation from theta in `direction` (CW or CCW) that reaches a
    boundary point of s. Returns +inf when s has no boundary (empty or full).
    """
    if direction not in (CW, CCW):
        raise ValueError(f"direction must be {CW!r} or {CCW!r}, got {direction!r}")
    pts = s.boundary_angles()
    if not pts:
        return math.inf
    return min(directional_gap(theta, p, direction) for p in pts)
