"""Closed-loop simulation of the turret against two attackers.

The loop evaluates both policies once per step, holds the controls constant,
integrates the polar dynamics with a classic fourth-order step, and scans
each step for terminal events. Capture is a sign change of the pointer-
relative angle (with a wrap guard so pi crossings do not count), breach is
the radius reaching the perimeter; event times come from linear
interpolation inside the step, and a simultaneous pair resolves in the
turret's favor (capture). A removed attacker is frozen at its event
position, breaches pinned to r = 1 and captures to the pointer angle, so
logged positions never dip below the perimeter.

While both attackers are alive the trajectory also records the standoff
quantities d1/d2, the boundary angles they are measured to, and the measures
of the two target sets, emitting a region_vanished event the first time a
tracked set empties. The turret's one observable beyond the state is the
latched `revealed` bit: it flips once any attacker's commanded speed for a
completed step exceeded the slow cap, and the turret policy sees the flip
from the following step on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .angles import signed_diff
from .model import AttackerPolar, GameState, PreconditionError, SpeedParams
from .regions import forcing_targets, nearest_edge

TurretPolicy = Callable[..., float]
AttackerPolicy = Callable[..., Tuple[Tuple[float, float], Tuple[float, float]]]

# trajectory column layout, also the CSV schema
COLUMNS = (
    "t", "theta_T", "r_A1", "theta_A1", "r_A2", "theta_A2",
    "omega_T", "v_A1", "phi_A1", "v_A2", "phi_A2",
    "d1", "d2", "theta_B1", "theta_B2",
)
_COL = {name: i for i, name in enumerate(COLUMNS)}

# tracked target sets, in (measure column, event name) order
REGION_NAMES = ("one_sure", "two_if_slow")

# commanded speeds above the slow cap by more than this reveal the speed
REVEAL_SLACK = 1e-9


@dataclass(frozen=True)
class SimConfig:
    """Everything one run needs. true_speed is the attackers' actual cap and
    must be one of the two published speeds."""

    state: GameState
    params: SpeedParams
    true_speed: float
    turret: TurretPolicy
    attackers: AttackerPolicy
    dt: float = 1e-3
    t_max: float = 30.0
    seed: int = 0
    eps_cap: float = 1e-6
    eps_breach: float = 1e-6
    track_regions: bool = True

    def __post_init__(self):
        if self.dt <= 0.0 or self.t_max <= 0.0:
            raise PreconditionError("dt and t_max must be positive")
        if self.eps_cap <= 0.0 or self.eps_breach <= 0.0:
            raise PreconditionError("tolerances must be positive")
        if self.true_speed not in (self.params.nu_slow, self.params.nu_fast):
            raise PreconditionError(
                f"true_speed {self.true_speed} is neither published speed")
        for a in self.state.attackers:
            if a.alive and a.r < 1.0 - self.eps_breach:
                raise PreconditionError(
                    f"alive attacker starts inside the perimeter: r={a.r}")


@dataclass(frozen=True)
class Event:
    kind: str  # "capture" | "breach" | "region_vanished"
    t: float
    index: Optional[int] = None  # attacker index for capture/breach
    name: Optional[str] = None  # region name for region_vanished


@dataclass
class Trajectory:
    """Fixed-cadence log plus the event record of one run."""

    data: np.ndarray  # (n, len(COLUMNS))
    measures: np.ndarray  # (n, 2): one_sure, two_if_slow; nan when untracked
    events: List[Event]
    payoff: int
    t_final: float  # time the second attacker was removed; nan if never
    horizon_exceeded: bool
    final_state: GameState
    config: SimConfig

    def column(self, name: str) -> np.ndarray:
        return self.data[:, _COL[name]]

    def to_csv(self, path, meta: Optional[dict] = None) -> None:
        lines = [f"# {k}={v}" for k, v in (meta or {}).items()]
        lines.append(",".join(COLUMNS))
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
            np.savetxt(fh, self.data, delimiter=",", fmt="%.12g")

    def summary(self) -> dict:
        """Events and payoff in plain-JSON form (the CSV sidecar)."""
        events = []
        for e in self.events:
            d = {"kind": e.kind, "t": e.t}
            if e.index is not None:
                d["attacker"] = e.index + 1
            if e.name is not None:
                d["region"] = e.name
            events.append(d)
        t_final = None if math.isnan(self.t_final) else self.t_final
        return {"payoff": self.payoff, "events": events, "t_final": t_final,
                "horizon_exceeded": self.horizon_exceeded}

    def write_summary(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.summary(), fh, indent=2)
            fh.write("\n")


def step(state: GameState, omega: float,
         controls: Sequence[Tuple[float, float]], dt: float) -> GameState:
    """One explicit fourth-order step with controls held constant.

    The pointer is linear and advances exactly. Each alive attacker
    integrates (r' = -v cos phi, theta' = v sin phi / r); the radial rate is
    constant under held controls, so only the angular rate needs the stages.
    """
    atts = []
    for a, (v, phi) in zip(state.attackers, controls):
        if not a.alive:
            atts.append(a)
            continue
        rdot = -v * math.cos(phi)
        w = v * math.sin(phi)

        def thdot(s: float) -> float:
            return w / (a.r + rdot * s)

        k1 = thdot(0.0)
        k2 = thdot(0.5 * dt)
        k4 = thdot(dt)
        # k2 and k3 coincide: the angular rate depends on time only
        theta = a.theta + dt * (k1 + 4.0 * k2 + k4) / 6.0
        atts.append(a.moved(a.r + rdot * dt, theta))
    return GameState(state.theta_t + omega * dt, (atts[0], atts[1]),
                     state.t + dt)


def detect_events(prev: GameState, nxt: GameState, eps_cap: float,
                  eps_breach: float) -> List[Event]:
    """Terminal-event candidates inside one step, earliest first.

    Capture: the pointer-relative angle changes sign (wrap-guarded) or ends
    within eps_cap of zero. Breach: the radius reaches 1. Times are linear
    interpolations; ties order capture before breach.
    """
    dt = nxt.t - prev.t
    found = []
    for i, (pa, na) in enumerate(zip(prev.attackers, nxt.attackers)):
        if not pa.alive:
            continue
        rel0 = signed_diff(pa.theta, prev.theta_t)
        rel1 = signed_diff(na.theta, nxt.theta_t)
        if abs(rel1) <= eps_cap:
            found.append((nxt.t, 0, Event("capture", nxt.t, index=i)))
        elif rel0 == 0.0 or (rel0 * rel1 < 0.0
                             and abs(rel0) + abs(rel1) < math.pi):
            t_e = prev.t + dt * abs(rel0) / (abs(rel0) + abs(rel1))
            found.append((t_e, 0, Event("capture", t_e, index=i)))
        if na.r <= 1.0:
            if pa.r > na.r:
                frac = min(1.0, max(0.0, (pa.r - 1.0) / (pa.r - na.r)))
            else:
                frac = 1.0
            t_e = prev.t + dt * frac
            found.append((t_e, 1, Event("breach", t_e, index=i)))
    found.sort(key=lambda item: (item[0], item[1]))
    return [item[2] for item in found]


def _freeze(state: GameState, event: Event) -> GameState:
    """Remove the event attacker, pinned to the exact terminal locus."""
    i = event.index
    a = state.attackers[i]
    if event.kind == "breach":
        a = AttackerPolar(1.0, a.theta, alive=True)
    else:
        a = AttackerPolar(max(a.r, 1.0), state.theta_t, alive=True)
    return state.with_attacker(i, a.removed())


def _standoff_row(state: GameState, p: SpeedParams):
    """(d1, d2, theta_B1, theta_B2, measure_one, measure_two) at a state,
    with distance zero when the pointer is inside a set and nan boundary
    angles where a set is empty."""
    one, two = forcing_targets(state, p)
    out = []
    for s in (one, two):
        d, edge, _ = nearest_edge(state.theta_t, s)
        if s.contains(state.theta_t):
            d = 0.0
        out.append((d, edge if edge is not None else math.nan))
    (d1, b1), (d2, b2) = out
    return d1, d2, b1, b2, one.measure, two.measure


def simulate(cfg: SimConfig) -> Trajectory:
    """Run one closed loop until both attackers are removed or the horizon
    expires, logging every step."""
    state = cfg.state
    p = cfg.params
    revealed = False
    rows: List[List[float]] = []
    meas: List[Tuple[float, float]] = []
    events: List[Event] = []
    removal_times = [math.nan, math.nan]
    was_present = [False, False]

    def eval_policies(st: GameState):
        nonlocal revealed
        omega = max(-1.0, min(1.0, cfg.turret(st, p, revealed)))
        controls = cfg.attackers(st, p, cfg.true_speed)
        if any(a.alive and c[0] > p.nu_slow + REVEAL_SLACK
               for a, c in zip(st.attackers, controls)):
            revealed = True
        return omega, controls

    def log_row(st: GameState, omega: float, controls) -> None:
        a1, a2 = st.attackers
        row = [st.t, st.theta_t, a1.r, a1.theta, a2.r, a2.theta, omega,
               controls[0][0], controls[0][1], controls[1][0], controls[1][1]]
        if cfg.track_regions and a1.alive and a2.alive:
            d1, d2, b1, b2, m1, m2 = _standoff_row(st, p)
            row += [d1, d2, b1, b2]
            for k, (name, m) in enumerate(zip(REGION_NAMES, (m1, m2))):
                if m > 0.0:
                    was_present[k] = True
                elif was_present[k]:
                    was_present[k] = False
                    events.append(Event("region_vanished", st.t, name=name))
            meas.append((m1, m2))
        else:
            row += [math.nan] * 4
            meas.append((math.nan, math.nan))
        rows.append(row)

    nan_controls = ((math.nan, math.nan), (math.nan, math.nan))
    while any(a.alive for a in state.attackers) and \
            state.t < cfg.t_max - 1e-12:
        dt = min(cfg.dt, cfg.t_max - state.t)
        omega, controls = eval_policies(state)
        log_row(state, omega, controls)
        target = state.t + dt
        nxt = step(state, omega, controls, dt)
        found = detect_events(state, nxt, cfg.eps_cap, cfg.eps_breach)
        while found:
            ev = found[0]
            partial = step(state, omega, controls, max(ev.t - state.t, 0.0))
            events.append(ev)
            removal_times[ev.index] = ev.t
            state = _freeze(partial, ev)
            if not any(a.alive for a in state.attackers):
                break
            if target - state.t <= 1e-12:
                break
            # finish the step on fresh controls from the post-event state
            omega, controls = eval_policies(state)
            nxt = step(state, omega, controls, target - state.t)
            found = detect_events(state, nxt, cfg.eps_cap, cfg.eps_breach)
        else:
            state = nxt

    log_row(state, math.nan, nan_controls)
    payoff = sum(1 for e in events if e.kind == "breach")
    done = not any(a.alive for a in state.attackers)
    t_final = max(removal_times) if done else math.nan
    return Trajectory(
        data=np.array(rows, dtype=float),
        measures=np.array(meas, dtype=float),
        events=events,
        payoff=payoff,
        t_final=t_final,
        horizon_exceeded=not done,
        final_state=state,
        config=cfg,
    )
