"""Case taxonomy for the asymmetric-speed game.

Every initial state falls into exactly one of eight cases, decided by an
ordered list of region-membership tests. The first five need only single
value-sign evaluations; the overlap-emptiness gate for the dilemma cases is
the one place full boundary construction happens, and it only runs for
states that survive the cheap screens.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .angles import sgn, signed_diff
from .model import (
    GameState,
    ORDER_12,
    ORDER_21,
    ORDERS,
    PreconditionError,
    SpeedParams,
)
from .one_v_one import duel_value
from .one_v_one import win_arc as duel_win_arc
from .regions import one_sure_components
from .two_v_one import win_arc as team_win_arc
from .two_v_one import wins as team_wins


class CaseLabel(enum.Enum):
    GUARANTEED_TWO_CAPTURES = "GuaranteedTwoCaptures"
    UNCAPTURABLE_SLOW = "UncapturableSlow"
    UNCAPTURABLE_FAST = "UncapturableFast"
    INCONSEQUENTIAL_SPEED = "InconsequentialSpeed"
    MATCHING_DIRECTIONS = "MatchingDirections"
    GUARANTEED_DILEMMA = "GuaranteedDilemma"
    AVOID_DILEMMA = "AvoidDilemma"
    FORCE_DILEMMA = "ForceDilemma"

    def __str__(self) -> str:
        return self.value


NO_WITNESS = "-"


@dataclass(frozen=True)
class Classification:
    """Label plus the membership witness that produced it.

    Witness encoding: a two-digit string "ij" records a team membership with
    attacker i captured first. For the dilemma cases the fast duel then
    belongs to attacker j; for MatchingDirections it belongs to attacker i
    when the plans name the same attacker, or to attacker j when they merely
    share a rotation direction. A single digit records which attacker's fast
    duel arc contains the pointer. The uncapturable cases carry no witness.

    When classify ran with explain=True, memberships holds every set test
    evaluated on the way to the label, in evaluation order.
    """

    label: CaseLabel
    witness: str
    memberships: Optional[Dict[str, bool]] = None

    @property
    def witness_order(self) -> Tuple[int, int] | None:
        if len(self.witness) != 2:
            return None
        return int(self.witness[0]) - 1, int(self.witness[1]) - 1


def _order_str(order: Tuple[int, int]) -> str:
    return f"{order[0] + 1}{order[1] + 1}"


def _in_duel(theta_t: float, attacker, nu: float) -> bool:
    return duel_value(attacker.r, signed_diff(theta_t, attacker.theta),
                      nu) <= 0.0


def classify(state: GameState, p: SpeedParams,
             explain: bool = False) -> Classification:
    """Ordered decision list; total and exclusive by construction.

    1 GuaranteedTwoCaptures  pointer in a team arc even at nu_fast
    2 UncapturableSlow       pointer in no duel arc even at nu_slow
    3 UncapturableFast       pointer in no duel arc at nu_fast
    4 InconsequentialSpeed   one capture either way: no team-slow membership
    5 MatchingDirections     the slow-team and fast-duel plans start with the
                             same move (same attacker, or same rotation when
                             both attackers sit on one side of the pointer)
    6 GuaranteedDilemma      conflicting directions, both overlaps empty
    7 AvoidDilemma           fast duel overlap reachable before it can close
    8 ForceDilemma           neither resolution available at the start
    """
    th = state.theta_t
    a1, a2 = state.attackers
    mem: Dict[str, bool] = {}

    def note(name: str, value: bool) -> bool:
        if explain:
            mem[name] = value
        return value

    def done(label: CaseLabel, witness: str) -> Classification:
        return Classification(label, witness, mem if explain else None)

    for order in ORDERS:
        if note(f"team_fast_{_order_str(order)}",
                team_wins(th, a1, a2, order, p.nu_fast)):
            return done(CaseLabel.GUARANTEED_TWO_CAPTURES, _order_str(order))

    slow_duel = tuple(
        note(f"duel_slow_{i + 1}", _in_duel(th, a, p.nu_slow))
        for i, a in enumerate(state.attackers))
    if not any(slow_duel):
        return done(CaseLabel.UNCAPTURABLE_SLOW, NO_WITNESS)

    fast_duel = tuple(
        note(f"duel_fast_{i + 1}", _in_duel(th, a, p.nu_fast))
        for i, a in enumerate(state.attackers))
    if not any(fast_duel):
        return done(CaseLabel.UNCAPTURABLE_FAST, NO_WITNESS)

    team_slow = {
        order: note(f"team_slow_{_order_str(order)}",
                    team_wins(th, a1, a2, order, p.nu_slow))
        for order in ORDERS}
    if not any(team_slow.values()):
        idx = "1" if fast_duel[0] else "2"
        return done(CaseLabel.INCONSEQUENTIAL_SPEED, idx)

    # one capture if fast, two if slow; do the first moves agree? The team
    # membership commits the turret to its runner, the fast duel to its own
    # attacker: same attacker means the two plans literally coincide
    for order in ORDERS:
        if team_slow[order] and fast_duel[order[0]]:
            return done(CaseLabel.MATCHING_DIRECTIONS, _order_str(order))

    # identities differ; the pointer cannot sit in the team-slow overlap,
    # or the matching test above would have fired
    assert not all(team_slow.values()), \
        "conflicting-direction state inside the team-slow overlap"
    mismatch = ORDER_12 if team_slow[ORDER_12] else ORDER_21
    witness = _order_str(mismatch)

    # both plans may still start with the same rotation (both attackers on
    # one side of the pointer): the turret turns that way and defers the
    # choice, so no dilemma can be forced
    s_runner = sgn(signed_diff(state.attackers[mismatch[0]].theta, th))
    s_duel = sgn(signed_diff(state.attackers[mismatch[1]].theta, th))
    if not note("directions_conflict", s_runner * s_duel < 0.0):
        return done(CaseLabel.MATCHING_DIRECTIONS, witness)

    fast_overlap = duel_win_arc(a1, p.nu_fast).intersect(
        duel_win_arc(a2, p.nu_fast))
    if note("fast_overlap_empty", fast_overlap.is_empty):
        slow_team_overlap = team_win_arc(a1, a2, ORDER_12, p.nu_slow).intersect(
            team_win_arc(a1, a2, ORDER_21, p.nu_slow))
        if note("team_slow_overlap_empty", slow_team_overlap.is_empty):
            return done(CaseLabel.GUARANTEED_DILEMMA, witness)
        return done(CaseLabel.FORCE_DILEMMA, witness)

    if note("one_sure_contains",
            one_sure_components(fast_overlap, p).contains(th)):
        return done(CaseLabel.AVOID_DILEMMA, witness)
    return done(CaseLabel.FORCE_DILEMMA, witness)


@dataclass(frozen=True)
class OpenLoopMatrix:
    """Breach counts for the four open-loop commitments from a guaranteed
    dilemma state: rows are the turret's committed rotation (aggressive =
    toward the team-slow runner, conservative = toward the fast duel),
    columns are the true speed (slow, fast)."""

    aggressive: Tuple[int, int]
    conservative: Tuple[int, int]
    aggressive_direction: float  # +1 CCW, -1 CW
    conservative_direction: float

    def as_rows(self):
        return [list(self.aggressive), list(self.conservative)]


def open_loop_matrix(state: GameState, p: SpeedParams,
                     dt: float = 1e-3) -> OpenLoopMatrix:
    """Simulate the four commitment-speed combinations with attackers playing
    complete-information best responses to the committed rotation."""
    c = classify(state, p)
    if c.label is not CaseLabel.GUARANTEED_DILEMMA:
        raise PreconditionError(
            f"open-loop matrix needs a GuaranteedDilemma state, got {c.label}")

    from .policies import best_response_to_committed, committed_turret
    from .sim import SimConfig, simulate
    runner_idx, duel_idx = c.witness_order
    th = state.theta_t
    dir_aggr = sgn(signed_diff(state.attackers[runner_idx].theta, th))
    dir_cons = sgn(signed_diff(state.attackers[duel_idx].theta, th))

    def run(direction: float, true_speed: float) -> int:
        cfg = SimConfig(
            state=state, params=p, true_speed=true_speed,
            turret=committed_turret(direction),
            attackers=best_response_to_committed(direction),
            dt=dt, track_regions=False,
        )
        return simulate(cfg).payoff

    return OpenLoopMatrix(
        aggressive=(run(dir_aggr, p.nu_slow), run(dir_aggr, p.nu_fast)),
        conservative=(run(dir_cons, p.nu_slow), run(dir_cons, p.nu_fast)),
        aggressive_direction=dir_aggr,
        conservative_direction=dir_cons,
    )
