"""Grid sweeps of the second attacker's initial position.

For a fixed first attacker, pointer angle, and speed pair, every cell of an
(r, theta) grid of second-attacker positions is classified, producing the
labeled region map. Alongside the map, the analytic loci that organize it
are sampled as polylines: the duel-arc boundaries of the swept attacker, the
team-membership boundaries for both capture orders, and the closed-form
transition curves of the one-sure construction.

The sweep covers only the half circle opposite the first attacker. On the
first attacker's own side both pursuits start with the same rotation, which
is the degenerate regime the taxonomy screens out early.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .angles import sgn, signed_diff
from .classify import CaseLabel, classify
from .model import (
    AttackerPolar,
    GameState,
    ORDER_12,
    ORDER_21,
    PreconditionError,
    SpeedParams,
)
from .one_v_one import win_half_width
from .regions import SWEPT, transition_curves
from .two_v_one import bisect_last_true, win_arc as team_win_arc
from .two_v_one import wins as team_wins

LABELS: Tuple[CaseLabel, ...] = tuple(CaseLabel)
LABEL_CODES: Dict[CaseLabel, int] = {lab: i for i, lab in enumerate(LABELS)}

# display names of the overlay curves
CURVE_DUEL_SLOW = "1v1 Slow"
CURVE_DUEL_FAST = "1v1 Fast"
CURVE_RUNNER_SLOW = "Runner (slow)"
CURVE_RUNNER_FAST = "Runner (fast)"
CURVE_PENETRATOR_SLOW = "Penetrator (slow)"
CURVE_EXIST = "R1v1 exist"
CURVE_NOMINAL = "R1v1 nominal"
CURVE_DEGENERATE = "R1v1 degenerate"

CSV_HEADER = "r,theta,label,witness_order"

BOUNDARY_BISECT_STEPS = 50


@dataclass(frozen=True)
class SweepSpec:
    """Frame and resolution of a position sweep.

    The grid is the Cartesian product of n_r radii in [r_min, r_max] and
    n_theta angles in [theta_min, theta_max]; both endpoints are included.
    Omitted angle bounds default to the full admissible half circle from the
    pointer to its antipode on the side away from the first attacker.
    """

    a1: AttackerPolar
    theta_t: float
    params: SpeedParams
    r_min: float = 1.0
    r_max: float = 3.0
    n_r: int = 200
    theta_min: Optional[float] = None
    theta_max: Optional[float] = None
    n_theta: int = 200
    jobs: int = 1

    def __post_init__(self):
        if signed_diff(self.a1.theta, self.theta_t) == 0.0:
            raise PreconditionError(
                "first attacker is aligned with the pointer; the sweep side "
                "is undefined")
        lo, hi = self.theta_span
        if self.theta_min is None:
            object.__setattr__(self, "theta_min", lo)
        if self.theta_max is None:
            object.__setattr__(self, "theta_max", hi)
        if self.n_r < 2 or self.n_theta < 2:
            raise PreconditionError("grid needs at least 2 steps per axis")
        if not 1.0 <= self.r_min < self.r_max:
            raise PreconditionError(
                f"radial range [{self.r_min}, {self.r_max}] must start at or "
                "outside the perimeter and be increasing")
        if not self.theta_min < self.theta_max:
            raise PreconditionError("angle range must be increasing")
        if self.theta_min < lo - 1e-12 or self.theta_max > hi + 1e-12:
            raise PreconditionError(
                "angle range reaches the first attacker's side of the "
                "pointer, where both pursuits share a rotation direction")
        if self.jobs < 1:
            raise PreconditionError("jobs must be positive")

    @property
    def side(self) -> float:
        """+1 when the sweep half circle is counterclockwise of the pointer
        (first attacker clockwise), -1 for the mirrored frame."""
        return -sgn(signed_diff(self.a1.theta, self.theta_t))

    @property
    def theta_span(self) -> Tuple[float, float]:
        """Admissible angle bounds: pointer to antipode, away from a1."""
        if self.side > 0.0:
            return self.theta_t, self.theta_t + math.pi
        return self.theta_t - math.pi, self.theta_t

    @property
    def r_values(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_r)

    @property
    def theta_values(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.n_theta)

    def cell(self) -> Tuple[float, float]:
        """Grid spacing (dr, dtheta)."""
        return ((self.r_max - self.r_min) / (self.n_r - 1),
                (self.theta_max - self.theta_min) / (self.n_theta - 1))

    def state_at(self, r: float, theta: float) -> GameState:
        return GameState(self.theta_t, (self.a1, AttackerPolar(r, theta)))


@dataclass(frozen=True)
class SweepGrid:
    """Completed sweep: codes[i, j] indexes LABELS for the second attacker
    at (r_values[i], theta_values[j]); witnesses carries the membership
    witness digits of each classification."""

    spec: SweepSpec
    r_values: np.ndarray
    theta_values: np.ndarray
    codes: np.ndarray
    witnesses: np.ndarray

    def label_at(self, i: int, j: int) -> CaseLabel:
        return LABELS[int(self.codes[i, j])]

    def labels_present(self) -> Tuple[CaseLabel, ...]:
        return tuple(LABELS[int(c)] for c in np.unique(self.codes))


def _classify_column(spec: SweepSpec, r: float) -> Tuple[List[int], List[str]]:
    codes: List[int] = []
    wits: List[str] = []
    for theta in spec.theta_values:
        c = classify(spec.state_at(float(r), float(theta)), spec.params)
        codes.append(LABEL_CODES[c.label])
        wits.append(c.witness)
    return codes, wits


def run_sweep(spec: SweepSpec) -> SweepGrid:
    """Classify every grid cell. Cells are pure and independent; with
    jobs > 1 the columns are farmed out to worker processes and gathered
    back in grid order, so the result does not depend on scheduling."""
    rv = spec.r_values
    tv = spec.theta_values
    codes = np.empty((spec.n_r, spec.n_theta), dtype=np.int8)
    wits = np.empty((spec.n_r, spec.n_theta), dtype="<U2")
    if spec.jobs == 1:
        columns = (_classify_column(spec, r) for r in rv)
    else:
        pool = ProcessPoolExecutor(max_workers=spec.jobs)
        try:
            chunk = max(1, spec.n_r // (4 * spec.jobs))
            columns = list(pool.map(_classify_column,
                                    [spec] * spec.n_r, rv, chunksize=chunk))
        finally:
            pool.shutdown()
    for i, (col_codes, col_wits) in enumerate(columns):
        codes[i, :] = col_codes
        wits[i, :] = col_wits
    return SweepGrid(spec, rv, tv, codes, wits)


@dataclass(frozen=True)
class Curve:
    """Named polyline in the swept attacker's (r, theta) plane."""

    name: str
    points: Tuple[Tuple[float, float], ...]


def _clip(spec: SweepSpec,
          pts: Sequence[Tuple[float, float]]) -> Tuple[Tuple[float, float], ...]:
    return tuple((r, th) for r, th in pts
                 if spec.theta_min <= th <= spec.theta_max)


def _duel_curve(spec: SweepSpec, nu: float) -> Tuple[Tuple[float, float], ...]:
    # zero locus of the swept attacker's duel value: theta offset = arc width
    pts = []
    for r in spec.r_values:
        w = win_half_width(float(r), nu)
        if w <= math.pi:
            pts.append((float(r), spec.theta_t + spec.side * w))
    return _clip(spec, pts)


def _column_ends(spec: SweepSpec) -> Tuple[float, float]:
    """Column endpoints (pointer side, antipode side)."""
    if spec.side < 0.0:
        return spec.theta_max, spec.theta_min
    return spec.theta_min, spec.theta_max


def _team_boundary(spec: SweepSpec, order: Tuple[int, int],
                   nu: float) -> Tuple[Tuple[float, float], ...]:
    """Membership boundary of one capture order as the swept attacker moves
    along each grid radius: scan each column from the pointer end at grid
    resolution for the first membership change, then bisect inside that
    bracket. Columns that never change contribute no point; later changes
    down the column belong to the wrapped-sweep regime near the antipode,
    not to this locus."""
    near, _ = _column_ends(spec)
    thetas = spec.theta_values
    if near == spec.theta_max:
        thetas = thetas[::-1]
    pts = []
    for r in spec.r_values:
        def member(theta: float, r=float(r)) -> bool:
            a2 = AttackerPolar(r, theta)
            return team_wins(spec.theta_t, spec.a1, a2, order, nu)

        first = member(float(thetas[0]))
        for j in range(1, len(thetas)):
            if member(float(thetas[j])) != first:
                lo, hi = float(thetas[j - 1]), float(thetas[j])
                if not first:
                    lo, hi = hi, lo
                pts.append((float(r),
                            bisect_last_true(lo, hi, member,
                                             BOUNDARY_BISECT_STEPS)))
                break
    return _clip(spec, pts)


def exist_curve_binding(spec: SweepSpec, r: float, theta: float) -> bool:
    """True when the existence locus actually bounds the guaranteed-dilemma
    region at this point. Where the slow-speed team overlap is nonempty the
    label switches on that overlap's transcendental boundary instead, a
    curve with no closed form."""
    a2 = AttackerPolar(r, theta)
    ts12 = team_win_arc(spec.a1, a2, ORDER_12, spec.params.nu_slow)
    ts21 = team_win_arc(spec.a1, a2, ORDER_21, spec.params.nu_slow)
    return ts12.intersect(ts21).is_empty


def degenerate_regime(spec: SweepSpec, r: float) -> bool:
    """True when, on the avoid-transition locus at swept radius r, the swept
    attacker's fast duel arc sits entirely inside the first attacker's. The
    degenerate branch of the locus applies there; the nominal branch covers
    the rest."""
    p = spec.params
    w1 = win_half_width(spec.a1.r, p.nu_fast)
    gap = abs(signed_diff(spec.a1.theta, spec.theta_t))
    return (p.inverse_ratio + 1.0) * win_half_width(r, p.nu_fast) <= w1 - gap


def overlay_curves(spec: SweepSpec) -> Tuple[Curve, ...]:
    """The named boundary loci sampled on the sweep's radial grid."""
    p = spec.params
    appendix = transition_curves(spec.a1.r, spec.a1.theta, spec.theta_t,
                                 p, [float(r) for r in spec.r_values],
                                 variant=SWEPT)
    return (
        Curve(CURVE_DUEL_SLOW, _duel_curve(spec, p.nu_slow)),
        Curve(CURVE_DUEL_FAST, _duel_curve(spec, p.nu_fast)),
        Curve(CURVE_RUNNER_SLOW, _team_boundary(spec, ORDER_21, p.nu_slow)),
        Curve(CURVE_RUNNER_FAST, _team_boundary(spec, ORDER_21, p.nu_fast)),
        Curve(CURVE_PENETRATOR_SLOW,
              _team_boundary(spec, ORDER_12, p.nu_slow)),
        Curve(CURVE_EXIST, _clip(spec, appendix["one_sure_exists"])),
        Curve(CURVE_NOMINAL, _clip(spec, appendix["one_sure_edge"])),
        Curve(CURVE_DEGENERATE,
              _clip(spec, appendix["one_sure_edge_contained"])),
    )


def emit_region_map(grid: SweepGrid, csv_path, curves_path,
                    meta: Optional[Dict[str, object]] = None) -> None:
    """Write the labeled grid as CSV and the overlay curves as JSON.

    The CSV rows run radius-major in grid order with one line per cell, so
    identical grids serialize byte for byte. Meta entries become comment
    lines above the header and a top-level object in the JSON.
    """
    lines = [f"# {k}={v}" for k, v in (meta or {}).items()]
    lines.append(CSV_HEADER)
    for i, r in enumerate(grid.r_values):
        for j, th in enumerate(grid.theta_values):
            lines.append(f"{r:.12g},{th:.12g},{grid.label_at(i, j)},"
                         f"{grid.witnesses[i, j]}")
    with open(csv_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")

    doc = dict(meta or {})
    doc["curves"] = [
        {"name": c.name, "points": [[r, th] for r, th in c.points]}
        for c in overlay_curves(grid.spec)
    ]
    with open(curves_path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def label_components(grid: SweepGrid) -> Dict[CaseLabel, int]:
    """4-connected component count per label present in the grid. A clean
    region map has a small handful per label; speckle would inflate this."""
    codes = grid.codes
    n_r, n_t = codes.shape
    seen = np.zeros(codes.shape, dtype=bool)
    counts: Dict[CaseLabel, int] = {}
    for i in range(n_r):
        for j in range(n_t):
            if seen[i, j]:
                continue
            code = codes[i, j]
            label = LABELS[int(code)]
            counts[label] = counts.get(label, 0) + 1
            stack = [(i, j)]
            seen[i, j] = True
            while stack:
                ci, cj = stack.pop()
                for ni, nj in ((ci - 1, cj), (ci + 1, cj),
                               (ci, cj - 1), (ci, cj + 1)):
                    if (0 <= ni < n_r and 0 <= nj < n_t
                            and not seen[ni, nj] and codes[ni, nj] == code):
                        seen[ni, nj] = True
                        stack.append((ni, nj))
    return counts


def transition_mids(grid: SweepGrid, i: int,
                    pair: Tuple[CaseLabel, CaseLabel]) -> List[float]:
    """Angles where column i of the grid switches between the two labels:
    midpoints of each adjacent cell pair carrying one label each."""
    want = {LABEL_CODES[pair[0]], LABEL_CODES[pair[1]]}
    col = grid.codes[i, :]
    tv = grid.theta_values
    mids = []
    for j in range(len(col) - 1):
        if {int(col[j]), int(col[j + 1])} == want:
            mids.append(0.5 * (float(tv[j]) + float(tv[j + 1])))
    return mids


def curve_transition_errors(grid: SweepGrid, curve: Curve,
                            pair: Tuple[CaseLabel, CaseLabel]) -> List[float]:
    """For each curve point whose column shows a transition between the two
    labels, the distance from the point to the nearest such transition.
    Points in columns without the transition are skipped: a locus can run
    inside a region that an earlier taxonomy test already claimed."""
    rv = grid.r_values
    errs = []
    for r, th in curve.points:
        i = int(np.argmin(np.abs(rv - r)))
        mids = transition_mids(grid, i, pair)
        if mids:
            errs.append(min(abs(m - th) for m in mids))
    return errs
