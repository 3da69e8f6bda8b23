"""Winning-region bundle over both speed hypotheses, and the derived sets
that drive the speed-deception analysis.

Everything here is a snapshot of one instant: arcs of pointer angles computed
from the two attacker positions under each admissible speed. Two derived sets
matter downstream. The "one sure" arc holds the pointer angles from which the
turret can reach the fast-speed duel overlap before constrained attackers
(speed capped at nu_slow) can close it, securing one capture whatever the
true speed turns out to be. The "two if slow" set is the overlap of the two
slow-speed team arcs: inside it the turret captures both attackers in either
order provided they really are slow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .angles import CCW, CW, sgn, signed_diff
from .arcs import Arc, ArcSet, boundary_distance
from .model import GameState, ORDER_12, ORDER_21, SpeedParams
from .one_v_one import angular_slack, win_half_width
from .one_v_one import win_arc as duel_win_arc
from .two_v_one import win_arc as team_win_arc


@dataclass(frozen=True)
class RegionBundle:
    """All winning regions for one state, plus their unions and overlaps."""

    single_fast_1: ArcSet
    single_fast_2: ArcSet
    single_slow_1: ArcSet
    single_slow_2: ArcSet
    team_slow_12: ArcSet  # attacker 1 chased first, then attacker 2
    team_slow_21: ArcSet
    team_fast_12: ArcSet
    team_fast_21: ArcSet
    both_fast: ArcSet  # duel-arc overlap at nu_fast
    any_fast: ArcSet
    any_slow: ArcSet
    any_team_slow: ArcSet
    any_team_fast: ArcSet
    both_team_slow: ArcSet  # capture both at nu_slow in either order
    one_sure: ArcSet  # one capture securable against either speed

    @property
    def two_if_slow(self) -> ArcSet:
        """Alias used when both_team_slow acts as the forcing target set."""
        return self.both_team_slow


def one_sure_arc(both_fast: ArcSet, p: SpeedParams) -> ArcSet:
    """Arc of pointer angles from which the fast-speed duel overlap is
    reachable before speed-capped attackers can dissolve it: the overlap arc
    widened about its center by the fast/slow speed ratio. The overlap must
    be a single arc (or empty); anything else means the caller fed a
    configuration outside this construction's assumptions."""
    if both_fast.is_empty:
        return ArcSet.empty()
    if both_fast.is_full or len(both_fast.arcs) != 1:
        raise ValueError(
            f"fast duel overlap must be a single arc, got {both_fast!r}"
        )
    return one_sure_components(both_fast, p)


def one_sure_components(both_fast: ArcSet, p: SpeedParams) -> ArcSet:
    """Componentwise generalization of one_sure_arc: each overlap component
    is widened about its own center, and the results are unioned. The
    reach-before-it-closes argument applies to any single component, so this
    extends the construction to overlaps that wrap into two pieces (wide
    arcs at near-antipodal centers). The classifier uses this form; the
    region bundle keeps the strict single-arc contract."""
    if both_fast.is_full:
        return ArcSet.full()
    return ArcSet.from_arcs(
        [Arc(a.center, p.inverse_ratio * a.half_width) for a in both_fast.arcs]
    )


def build_regions(state: GameState, p: SpeedParams) -> RegionBundle:
    a1, a2 = state.attackers
    sf1 = duel_win_arc(a1, p.nu_fast)
    sf2 = duel_win_arc(a2, p.nu_fast)
    ss1 = duel_win_arc(a1, p.nu_slow)
    ss2 = duel_win_arc(a2, p.nu_slow)
    ts12 = team_win_arc(a1, a2, ORDER_12, p.nu_slow)
    ts21 = team_win_arc(a1, a2, ORDER_21, p.nu_slow)
    tf12 = team_win_arc(a1, a2, ORDER_12, p.nu_fast)
    tf21 = team_win_arc(a1, a2, ORDER_21, p.nu_fast)
    both_fast = sf1.intersect(sf2)
    return RegionBundle(
        single_fast_1=sf1,
        single_fast_2=sf2,
        single_slow_1=ss1,
        single_slow_2=ss2,
        team_slow_12=ts12,
        team_slow_21=ts21,
        team_fast_12=tf12,
        team_fast_21=tf21,
        both_fast=both_fast,
        any_fast=sf1.union(sf2),
        any_slow=ss1.union(ss2),
        any_team_slow=ts12.union(ts21),
        any_team_fast=tf12.union(tf21),
        both_team_slow=ts12.intersect(ts21),
        one_sure=one_sure_arc(both_fast, p),
    )


@dataclass(frozen=True)
class Standoff:
    """Pointer's rotational distances to the two target sets it is caught
    between. Distances are +inf when the target set has no boundary."""

    d_one: float  # to the nearest edge of one_sure
    d_two: float  # to the nearest edge of both_team_slow
    edge_one: Optional[float]  # boundary angle realizing d_one
    edge_two: Optional[float]
    side_one: Optional[str]  # CW or CCW, pointer to edge
    side_two: Optional[str]


def nearest_edge(theta_t: float, target: ArcSet):
    """(distance, edge angle, side) of the closest boundary point of target;
    (inf, None, None) when there is no boundary. Ties go counterclockwise."""
    d_ccw = boundary_distance(theta_t, target, CCW)
    d_cw = boundary_distance(theta_t, target, CW)
    if math.isinf(d_ccw) and math.isinf(d_cw):
        return math.inf, None, None
    if d_ccw <= d_cw:
        return d_ccw, theta_t + d_ccw, CCW
    return d_cw, theta_t - d_cw, CW


def standoff(theta_t: float, bundle: RegionBundle) -> Standoff:
    d1, e1, s1 = nearest_edge(theta_t, bundle.one_sure)
    d2, e2, s2 = nearest_edge(theta_t, bundle.both_team_slow)
    return Standoff(d1, d2, e1, e2, s1, s2)


@lru_cache(maxsize=8)
def team_arcs(state: GameState, p: SpeedParams) -> Tuple[ArcSet, ArcSet]:
    """Slow-speed team winning arcs for the two capture orders, cached per
    state; states are frozen, so equal keys mean bit-identical inputs."""
    a1, a2 = state.attackers
    return (team_win_arc(a1, a2, ORDER_12, p.nu_slow),
            team_win_arc(a1, a2, ORDER_21, p.nu_slow))


@lru_cache(maxsize=8)
def forcing_targets(state: GameState, p: SpeedParams) -> Tuple[ArcSet, ArcSet]:
    """The two standoff target sets (one_sure, both_team_slow) built without
    the rest of the bundle. Cached so the per-step policy evaluations and the
    trajectory log share one construction. The one_sure side uses the
    componentwise widening, which never rejects a configuration mid-run."""
    a1, a2 = state.attackers
    overlap = duel_win_arc(a1, p.nu_fast).intersect(duel_win_arc(a2, p.nu_fast))
    arc12, arc21 = team_arcs(state, p)
    return one_sure_components(overlap, p), arc12.intersect(arc21)


def forcing_standoff(state: GameState, p: SpeedParams) -> Standoff:
    """Standoff distances computed directly from the state."""
    one, two = forcing_targets(state, p)
    d1, e1, s1 = nearest_edge(state.theta_t, one)
    d2, e2, s2 = nearest_edge(state.theta_t, two)
    return Standoff(d1, d2, e1, e2, s1, s2)


def one_sure_edge_rate(opposite_rate: float, matching_rate: float,
                       p: SpeedParams) -> float:
    """Rate of a one-sure edge given the rates of the two duel-overlap edges:
    the matching edge is the overlap edge on the same side as the queried
    one-sure edge, the opposite edge is the other one. Equals -1 exactly when
    (opposite, matching) = (ratio, -ratio) and +1 at the negation: attackers
    moving their duel edges at the capped extremes drag the widened arc at
    pointer speed but never faster."""
    half_sum = 0.5 * (opposite_rate + matching_rate)
    return half_sum + 0.5 * (matching_rate - opposite_rate) / p.ratio


def vanish_bound(pen_r: float, p: SpeedParams) -> float:
    """Time bound for the forcing endgame: an attacker holding a tangent or
    penetrator role descends at least at nu_slow * sqrt(1 - nu_fast^2), so it
    reaches the perimeter (collapsing every region that depends on it) within
    this many time units."""
    rate = p.nu_slow * math.sqrt(1.0 - p.nu_fast * p.nu_fast)
    if rate <= 0.0:
        return math.inf
    return (pen_r - 1.0) / rate


# which radius feeds the width terms of the transition curves below
SWEPT = "swept"  # widths follow the swept attacker's radius (self-consistent)
ANCHORED = "anchored"  # alternate reading: the fixed attacker's radius


def transition_curves(a1_r: float, a1_theta: float, theta_t: float,
                      p: SpeedParams, r_values: Sequence[float],
                      variant: str = SWEPT) -> Dict[str, Tuple[Tuple[float, float], ...]]:
    """Analytic loci in the swept attacker's (r, theta) plane where the
    one-sure construction changes character, for a fixed first attacker and
    pointer angle.

    Curves (each a tuple of (r, theta) points over r_values):
      one_sure_exists: the fast duel overlap appears below this theta.
      one_sure_edge: the one-sure boundary passes through the pointer while
        the overlap's far edge belongs to the swept attacker.
      one_sure_edge_contained: same, in the regime where the swept attacker's
        duel arc sits entirely inside the first attacker's.

    Two readings of the width algebra exist; `swept` (default) is the
    self-consistent one, `anchored` reproduces the alternate reading (width
    terms pinned to the first attacker's radius, and the exists curve offset
    by four perimeter slacks) for comparison. The construction assumes the
    first attacker counterclockwise of the pointer and the swept attacker
    below; mirrored inputs are mirrored internally and back."""
    if variant not in (SWEPT, ANCHORED):
        raise ValueError(f"variant must be {SWEPT!r} or {ANCHORED!r}")
    # work in offsets from the pointer, mirrored so attacker 1 sits CCW
    side = sgn(signed_diff(a1_theta, theta_t))
    w1 = win_half_width(a1_r, p.nu_fast)
    l1 = side * signed_diff(a1_theta, theta_t) - w1  # overlap edge from A1
    beta = p.inverse_ratio
    exists_offset = 0.0
    if variant == ANCHORED:
        exists_offset = -4.0 * angular_slack(1.0, p.nu_fast)

    exists = []
    edge = []
    contained = []
    for r in r_values:
        wf = win_half_width(r, p.nu_fast) if variant == SWEPT else w1
        exists.append((r, l1 - wf + exists_offset))
        edge.append((r, (beta - 1.0) / (beta + 1.0) * l1 - wf))
        contained.append((r, -beta * wf))
    # mirror each offset back to a real angle
    return {
        name: tuple((r, theta_t + side * off) for r, off in pts)
        for name, pts in (
            ("one_sure_exists", exists),
            ("one_sure_edge", edge),
            ("one_sure_edge_contained", contained),
        )
    }
