"""Control policies for both sides, as interchangeable values the simulator
evaluates once per step.

The two sides see different things, and the call signatures encode that.
Turret policies are called with (state, params, revealed): `revealed` is the
one bit the turret can actually learn by watching, whether any attacker has
ever moved faster than nu_slow. Attacker policies are called with
(state, params, true_speed): the secret the turret lacks. A policy that is
information-limiting must ignore `true_speed` while both attackers survive,
and must keep its speeds at or below nu_slow; the certification tests check
both properties on whole trajectories.

Once an attacker is removed the deception phase is over, so every attacker
policy degrades to the survivor's solo escape at its true speed, and the
pursuit-style turret policies chase the survivor.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from .angles import CCW, CW, directional_gap, sgn, signed_diff
from .model import GameState, ORDER_12, ORDERS, SpeedParams
from .one_v_one import attacker_controls as duel_controls
from .one_v_one import duel_value, turret_rate
from .regions import forcing_standoff, forcing_targets, nearest_edge, team_arcs
from .two_v_one import NoCaptureError
from .two_v_one import attacker_controls as team_controls
from .two_v_one import wins as team_wins

log = logging.getLogger(__name__)

# control placeholder for removed attackers
NO_CONTROL = (math.nan, math.nan)

# standoff target tokens for the seek policies
ONE_SURE = "one_sure"
TWO_IF_SLOW = "two_if_slow"

# attacker policies whose outputs must stay speed-capped and independent of
# the true-speed flag while both attackers survive
INFORMATION_LIMITING = ("ss_fh", "2v1_slow", "forcing_switch", "switch_mix")


def _tangent_each(state: GameState, nu: float):
    """Every alive attacker plays its solo duel escape at speed nu."""
    out = [NO_CONTROL, NO_CONTROL]
    for i in state.alive_indices:
        a = state.attackers[i]
        out[i] = duel_controls(a.r, signed_diff(a.theta, state.theta_t), nu)
    return (out[0], out[1])


def _ss_fh_each(state: GameState, p: SpeedParams):
    """Slow speed, fast heading: the tangent direction computed as if the
    speed were nu_fast, flown at nu_slow."""
    out = [NO_CONTROL, NO_CONTROL]
    for i in state.alive_indices:
        a = state.attackers[i]
        _, heading = duel_controls(a.r, signed_diff(a.theta, state.theta_t),
                                   p.nu_fast)
        out[i] = (p.nu_slow, heading)
    return (out[0], out[1])


def _binding_order(state: GameState, p: SpeedParams, edge: float):
    """Capture order whose winning arc owns the given boundary angle of the
    two-if-slow intersection. The intersection inherits its endpoints from
    the constituent arcs, so a wrap-aware match against their boundaries
    identifies the active constraint; coincident edges fall to order (0, 1)."""
    for order, arcs in zip(ORDERS, team_arcs(state, p)):
        if any(abs(signed_diff(b, edge)) < 1e-9
               for b in arcs.boundary_angles()):
            return order
    return None


def _team_slow_controls(state: GameState, p: SpeedParams):
    """Slow 2v1 play in the edge-pinning form: controls are computed against
    a stand-in pointer on the near edge of the two-if-slow set, under the
    order whose constraint binds there. Ahead of the runner the binding
    constraint is the team value and the runner plays its delaying law;
    behind the runner it is the runner's own duel arc and the runner plays
    its slow tangent instead, the penetrator sweeping tangent on the frame
    side either way. Played this way the binding edge retreats from a
    chasing pointer at exactly the pointer's top rate, which is what keeps
    the standoff distance d_two from shrinking. Returns None when the set is
    gone or the binding chase is not viable from the edge."""
    so = forcing_standoff(state, p)
    if so.edge_two is None:
        return None
    order = _binding_order(state, p, so.edge_two)
    if order is None:
        return None
    ghost = replace(state, theta_t=so.edge_two)
    runner = state.attackers[order[0]]
    pen = state.attackers[order[1]]
    gap = signed_diff(pen.theta, runner.theta)
    side, sep = sgn(gap), abs(gap)
    u = side * signed_diff(ghost.theta_t, runner.theta)
    if u >= sep - 1e-9:
        # the edge is the penetrator's own position (the arc caps there);
        # no attacker play holds that edge, so report no pinning play
        return None
    if u > 0.0:
        try:
            return team_controls(ghost, order, p.nu_slow)
        except NoCaptureError:
            return None
    run_ctrl = (p.nu_slow, sgn(signed_diff(runner.theta, ghost.theta_t))
                * math.asin(p.nu_slow / runner.r))
    pen_ctrl = (p.nu_slow, side * math.asin(p.nu_slow / pen.r))
    out = [None, None]
    out[order[0]] = run_ctrl
    out[order[1]] = pen_ctrl
    return (out[0], out[1])


# turret policies


@dataclass(frozen=True)
class Pursue:
    """Full rate toward one attacker, switching to the survivor."""

    index: int = 0

    def __call__(self, state: GameState, p: SpeedParams,
                 revealed: bool = False) -> float:
        alive = state.alive_indices
        if not alive:
            return 0.0
        i = self.index if state.attackers[self.index].alive else alive[0]
        return turret_rate(signed_diff(state.attackers[i].theta,
                                       state.theta_t))


@dataclass(frozen=True)
class Committed:
    """Constant rotation until the first removal, then pursue the survivor."""

    direction: float  # +1 counterclockwise, -1 clockwise

    def __call__(self, state: GameState, p: SpeedParams,
                 revealed: bool = False) -> float:
        alive = state.alive_indices
        if len(alive) == 2:
            return self.direction
        if not alive:
            return 0.0
        a = state.attackers[alive[0]]
        return turret_rate(signed_diff(a.theta, state.theta_t))


@dataclass(frozen=True)
class SeekBoundary:
    """Full rate toward the nearest edge of a standoff target set. Holds when
    the set has vanished (nothing left to seek) or has been reached; chases
    the survivor once the two-attacker construction no longer applies."""

    target: str = ONE_SURE

    def __post_init__(self):
        if self.target not in (ONE_SURE, TWO_IF_SLOW):
            raise ValueError(
                f"target must be {ONE_SURE!r} or {TWO_IF_SLOW!r},"
                f" got {self.target!r}")

    def __call__(self, state: GameState, p: SpeedParams,
                 revealed: bool = False) -> float:
        if len(state.alive_indices) < 2:
            return Pursue()(state, p, revealed)
        one, two = forcing_targets(state, p)
        s = one if self.target == ONE_SURE else two
        if s.is_empty or s.is_full or s.contains(state.theta_t):
            return 0.0
        _, _, side = nearest_edge(state.theta_t, s)
        return 1.0 if side == CCW else -1.0


@dataclass(frozen=True)
class RandomWalk:
    """Seeded +-1 rotation, redrawn on a fixed interval. Pure in the state:
    the draw is keyed by (seed, interval index), so replays are exact."""

    seed: int = 0
    interval: float = 0.05

    def __call__(self, state: GameState, p: SpeedParams,
                 revealed: bool = False) -> float:
        k = int(math.floor(state.t / self.interval + 1e-9))
        rng = np.random.default_rng((self.seed, k))
        return 2.0 * float(rng.integers(0, 2)) - 1.0


@dataclass(frozen=True)
class AvoidScript:
    """Dilemma-avoiding script for a pointer that starts inside one_sure:
    advance the slow double-capture plan (full rate toward the nearer viable
    runner) until the attackers are seen moving fast, then bank the fast duel
    by pursuing whichever attacker's fast arc holds deepest. Moving toward
    the runner is also the approach to the fast overlap, so the fast option
    stays open the whole way."""

    def __call__(self, state: GameState, p: SpeedParams,
                 revealed: bool = False) -> float:
        alive = state.alive_indices
        if not alive:
            return 0.0
        th = state.theta_t
        if len(alive) == 1:
            a = state.attackers[alive[0]]
            return turret_rate(signed_diff(a.theta, th))
        a1, a2 = state.attackers
        if not revealed:
            runners = [o[0] for o in ORDERS
                       if team_wins(th, a1, a2, o, p.nu_slow)]
            if runners:
                target = min(
                    runners,
                    key=lambda i: abs(signed_diff(state.attackers[i].theta,
                                                  th)))
                return turret_rate(
                    signed_diff(state.attackers[target].theta, th))
        target = min(
            (0, 1),
            key=lambda i: duel_value(state.attackers[i].r,
                                     signed_diff(th,
                                                 state.attackers[i].theta),
                                     p.nu_fast))
        return turret_rate(signed_diff(state.attackers[target].theta, th))


# attacker policies


@dataclass(frozen=True)
class TangentEscape:
    """Both attackers play their solo escapes at the true speed: the honest
    benchmark with nothing withheld."""

    def __call__(self, state: GameState, p: SpeedParams, true_speed: float):
        return _tangent_each(state, true_speed)


@dataclass(frozen=True)
class SlowSpeedFastHeading:
    """Move at nu_slow along the heading that would be optimal at nu_fast.
    The unique play that drags the fast duel overlap shut at the pointer's
    own top rate while revealing nothing."""

    def __call__(self, state: GameState, p: SpeedParams, true_speed: float):
        if len(state.alive_indices) < 2:
            return _tangent_each(state, true_speed)
        return _ss_fh_each(state, p)


@dataclass(frozen=True)
class TeamSlow:
    """Slow 2v1 play in the edge-pinning form (see _team_slow_controls).
    Falls back to slow solo escapes when no viable chase exists, keeping the
    speed cap either way."""

    def __call__(self, state: GameState, p: SpeedParams, true_speed: float):
        if len(state.alive_indices) < 2:
            return _tangent_each(state, true_speed)
        ctrl = _team_slow_controls(state, p)
        if ctrl is None:
            return _tangent_each(state, p.nu_slow)
        return ctrl


@dataclass(frozen=True)
class ForcingSwitch:
    """Forcing-phase switch: play the slow team game while the two-if-slow
    target is the nearer threat (d_two < d_one), slow-speed fast-heading
    otherwise, ties included. Each branch guards its own distance and never
    gives up more than the other regains, so the pointer can close on
    neither target."""

    def __call__(self, state: GameState, p: SpeedParams, true_speed: float):
        if len(state.alive_indices) < 2:
            return _tangent_each(state, true_speed)
        so = forcing_standoff(state, p)
        if so.d_two < so.d_one:
            ctrl = _team_slow_controls(state, p)
            if ctrl is not None:
                return ctrl
            log.info("slow team branch not viable, falling back to ss_fh")
        return _ss_fh_each(state, p)


@dataclass(frozen=True)
class SeededSwitch:
    """Arbitrary seeded mixing of the two information-limiting behaviors,
    redrawn on a fixed interval; exists to exercise the finite-vanishing
    argument, which holds for any switching pattern."""

    seed: int = 0
    interval: float = 0.05

    def __call__(self, state: GameState, p: SpeedParams, true_speed: float):
        if len(state.alive_indices) < 2:
            return _tangent_each(state, true_speed)
        k = int(math.floor(state.t / self.interval + 1e-9))
        rng = np.random.default_rng((self.seed, k))
        if rng.integers(0, 2):
            ctrl = _team_slow_controls(state, p)
            if ctrl is not None:
                return ctrl
        return _ss_fh_each(state, p)


# stalling-flight shape for an unchaseable pursued attacker: radial band it
# hovers in, and the pointer gap that triggers the final dive
HOVER_BAND = 0.05
DIVE_GAP = 0.15


def _stalling_escape(a, gap: float, direction: float, nu: float):
    """Drag out a chase the turret cannot win: run ahead of the sweep while
    bleeding altitude, hover just above the perimeter, and dive only once
    the pointer closes in. A committed turret stays locked on this attacker
    until its removal, so every stalled unit of time is bought for the
    partner."""
    if gap <= DIVE_GAP:
        return (nu, 0.0)
    if a.r > 1.0 + HOVER_BAND:
        return (nu, direction * math.asin(nu / a.r))
    return (nu, direction * 0.5 * math.pi)


@dataclass(frozen=True)
class BestResponse:
    """Punishing reply to a committed rotation: the attacker the sweep
    reaches first plays the runner's delaying law against the real pointer,
    the other dives for the perimeter on its duel tangent. When the chase is
    unviable the pursued attacker stalls it instead of escaping at once,
    pinning the committed turret while the partner leaves its duel arc. Both
    use the true speed: the commitment holds until a removal regardless of
    what the turret learns."""

    direction: float

    def __call__(self, state: GameState, p: SpeedParams, true_speed: float):
        if len(state.alive_indices) < 2:
            return _tangent_each(state, true_speed)
        d = CCW if self.direction > 0.0 else CW
        gaps = [directional_gap(state.theta_t, a.theta, d)
                for a in state.attackers]
        pursued = 0 if gaps[0] <= gaps[1] else 1
        if gaps[pursued] >= math.pi:
            return _tangent_each(state, true_speed)
        try:
            return team_controls(state, (pursued, 1 - pursued), true_speed)
        except NoCaptureError:
            out = list(_tangent_each(state, true_speed))
            out[pursued] = _stalling_escape(
                state.attackers[pursued], gaps[pursued], self.direction,
                true_speed)
            return (out[0], out[1])


def committed_turret(direction: float) -> Committed:
    return Committed(1.0 if direction > 0.0 else -1.0)


def best_response_to_committed(direction: float) -> BestResponse:
    return BestResponse(1.0 if direction > 0.0 else -1.0)


def _direction_value(direction) -> float:
    if direction in (CCW, CW):
        return 1.0 if direction == CCW else -1.0
    return 1.0 if float(direction) > 0.0 else -1.0


_TURRET = {
    "pursue": Pursue,
    "committed": lambda direction=CCW: committed_turret(
        _direction_value(direction)),
    "seek_r1v1": lambda: SeekBoundary(ONE_SURE),
    "seek_r2v1": lambda: SeekBoundary(TWO_IF_SLOW),
    "random_walk": RandomWalk,
    "avoid_script": AvoidScript,
}

_ATTACKER = {
    "1v1_tangent": TangentEscape,
    "ss_fh": SlowSpeedFastHeading,
    "2v1_slow": TeamSlow,
    "forcing_switch": ForcingSwitch,
    "switch_mix": SeededSwitch,
    "best_response": lambda direction=CCW: best_response_to_committed(
        _direction_value(direction)),
}


def turret_policy(name: str, params=None):
    """Build a named turret policy. Raises ValueError on unknown names."""
    try:
        maker = _TURRET[name]
    except KeyError:
        raise ValueError(
            f"unknown turret policy {name!r}; known: {sorted(_TURRET)}"
        ) from None
    return maker(**dict(params or {}))


def attacker_policy(name: str, params=None):
    """Build a named attacker policy. Raises ValueError on unknown names."""
    try:
        maker = _ATTACKER[name]
    except KeyError:
        raise ValueError(
            f"unknown attacker policy {name!r}; known: {sorted(_ATTACKER)}"
        ) from None
    return maker(**dict(params or {}))
