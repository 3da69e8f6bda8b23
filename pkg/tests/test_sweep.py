import json
import math

import numpy as np
import pytest

from conftest import SWEEP_A1, SWEEP_PARAMS, SWEEP_THETA_T
from turretgame.angles import signed_diff
from turretgame.classify import CaseLabel, classify
from turretgame.model import AttackerPolar, PreconditionError, SpeedParams
from turretgame.one_v_one import duel_value
from turretgame.sweep import (
    CSV_HEADER,
    CURVE_DEGENERATE,
    CURVE_DUEL_FAST,
    CURVE_DUEL_SLOW,
    CURVE_EXIST,
    CURVE_NOMINAL,
    CURVE_PENETRATOR_SLOW,
    CURVE_RUNNER_FAST,
    CURVE_RUNNER_SLOW,
    Curve,
    LABELS,
    SweepSpec,
    curve_transition_errors,
    degenerate_regime,
    emit_region_map,
    exist_curve_binding,
    label_components,
    overlay_curves,
    run_sweep,
)
from turretgame.model import ORDER_12, ORDER_21
from turretgame.two_v_one import wins as team_wins

ALL_CURVE_NAMES = (
    CURVE_DUEL_SLOW, CURVE_DUEL_FAST, CURVE_RUNNER_SLOW, CURVE_RUNNER_FAST,
    CURVE_PENETRATOR_SLOW, CURVE_EXIST, CURVE_NOMINAL, CURVE_DEGENERATE,
)


def frame_spec(**kw):
    base = dict(a1=SWEEP_A1, theta_t=SWEEP_THETA_T, params=SWEEP_PARAMS)
    base.update(kw)
    return SweepSpec(**base)


@pytest.fixture(scope="module")
def grid60():
    return run_sweep(frame_spec(n_r=60, n_theta=60))


@pytest.fixture(scope="module")
def curves60(grid60):
    return {c.name: c for c in overlay_curves(grid60.spec)}


class TestSweepSpec:
    def test_defaults_cover_half_circle_away_from_a1(self):
        spec = frame_spec()
        assert spec.theta_min == SWEEP_THETA_T - math.pi
        assert spec.theta_max == SWEEP_THETA_T
        assert spec.side == -1.0

    def test_mirrored_frame_covers_other_half(self):
        spec = frame_spec(a1=AttackerPolar(2.0, -0.45))
        assert spec.theta_min == SWEEP_THETA_T
        assert spec.theta_max == SWEEP_THETA_T + math.pi
        assert spec.side == 1.0

    def test_grid_axes_hit_both_endpoints(self):
        spec = frame_spec(n_r=7, n_theta=5)
        assert spec.r_values[0] == 1.0 and spec.r_values[-1] == 3.0
        assert len(spec.r_values) == 7 and len(spec.theta_values) == 5
        dr, dth = spec.cell()
        assert dr == pytest.approx(2.0 / 6)
        assert dth == pytest.approx(math.pi / 4)

    @pytest.mark.parametrize("kw", [
        {"n_r": 1},
        {"n_theta": 1},
        {"r_min": 0.8},
        {"r_min": 2.5, "r_max": 1.5},
        {"theta_min": -1.0, "theta_max": 0.3},
        {"theta_min": -4.0},
        {"jobs": 0},
    ])
    def test_bad_ranges_rejected(self, kw):
        with pytest.raises(PreconditionError):
            frame_spec(**kw)

    def test_aligned_first_attacker_rejected(self):
        with pytest.raises(PreconditionError):
            frame_spec(a1=AttackerPolar(2.0, SWEEP_THETA_T))


class TestRunSweep:
    def test_every_cell_labeled(self, grid60):
        assert grid60.codes.shape == (60, 60)
        assert grid60.codes.min() >= 0
        assert grid60.codes.max() < len(LABELS)
        assert all(w in ("-", "1", "2", "12", "21")
                   for w in grid60.witnesses.ravel())

    def test_cells_match_direct_classification(self, grid60):
        spec = grid60.spec
        rng = np.random.default_rng(7)
        cells = [(0, 0), (0, 59), (59, 0), (59, 59)]
        cells += [tuple(rng.integers(0, 60, size=2)) for _ in range(20)]
        for i, j in cells:
            state = spec.state_at(float(grid60.r_values[i]),
                                  float(grid60.theta_values[j]))
            c = classify(state, spec.params)
            assert grid60.label_at(i, j) is c.label
            assert grid60.witnesses[i, j] == c.witness

    def test_frame_shows_all_six_cases(self, grid60):
        present = set(grid60.labels_present())
        assert present == {
            CaseLabel.GUARANTEED_TWO_CAPTURES,
            CaseLabel.INCONSEQUENTIAL_SPEED,
            CaseLabel.MATCHING_DIRECTIONS,
            CaseLabel.GUARANTEED_DILEMMA,
            CaseLabel.AVOID_DILEMMA,
            CaseLabel.FORCE_DILEMMA,
        }

    def test_labels_form_contiguous_regions(self, grid60):
        for label, count in label_components(grid60).items():
            assert count <= 4, f"{label} split into {count} pieces"

    def test_deterministic(self):
        a = run_sweep(frame_spec(n_r=16, n_theta=16))
        b = run_sweep(frame_spec(n_r=16, n_theta=16))
        assert np.array_equal(a.codes, b.codes)
        assert np.array_equal(a.witnesses, b.witnesses)

    def test_parallel_matches_serial(self):
        serial = run_sweep(frame_spec(n_r=12, n_theta=12))
        parallel = run_sweep(frame_spec(n_r=12, n_theta=12, jobs=2))
        assert np.array_equal(serial.codes, parallel.codes)
        assert np.array_equal(serial.witnesses, parallel.witnesses)

    def test_mirror_symmetry(self):
        a = run_sweep(frame_spec(n_r=24, n_theta=24))
        b = run_sweep(frame_spec(a1=AttackerPolar(2.0, -0.45),
                                 n_r=24, n_theta=24))
        assert np.array_equal(a.codes, b.codes[:, ::-1])
        assert np.array_equal(a.witnesses, b.witnesses[:, ::-1])


class TestOverlayCurves:
    def test_names_and_ranges(self, grid60, curves60):
        assert tuple(curves60) == ALL_CURVE_NAMES
        spec = grid60.spec
        for c in curves60.values():
            assert c.points, f"{c.name} is empty"
            for r, th in c.points:
                assert spec.r_min <= r <= spec.r_max
                assert spec.theta_min <= th <= spec.theta_max

    @pytest.mark.parametrize("name,nu", [
        (CURVE_DUEL_SLOW, SWEEP_PARAMS.nu_slow),
        (CURVE_DUEL_FAST, SWEEP_PARAMS.nu_fast),
    ])
    def test_duel_curves_are_value_zero_loci(self, curves60, name, nu):
        for r, th in curves60[name].points:
            rel = signed_diff(SWEEP_THETA_T, th)
            assert duel_value(r, rel, nu) == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("name,order,nu", [
        (CURVE_RUNNER_SLOW, ORDER_21, SWEEP_PARAMS.nu_slow),
        (CURVE_RUNNER_FAST, ORDER_21, SWEEP_PARAMS.nu_fast),
        (CURVE_PENETRATOR_SLOW, ORDER_12, SWEEP_PARAMS.nu_slow),
    ])
    def test_team_curves_sit_on_membership_boundaries(self, grid60, curves60,
                                                      name, order, nu):
        eps = 1e-9
        spec = grid60.spec
        for r, th in curves60[name].points:
            if min(th - spec.theta_min, spec.theta_max - th) <= eps:
                continue  # locus terminates on the grid edge
            inside = team_wins(SWEEP_THETA_T, SWEEP_A1,
                               AttackerPolar(r, th + eps), order, nu)
            outside = team_wins(SWEEP_THETA_T, SWEEP_A1,
                                AttackerPolar(r, th - eps), order, nu)
            assert inside != outside

    def test_exist_curve_tracks_dilemma_boundary(self, grid60, curves60):
        curve = curves60[CURVE_EXIST]
        spec = grid60.spec
        binding = Curve(curve.name, tuple(
            p for p in curve.points if exist_curve_binding(spec, *p)))
        errs = curve_transition_errors(
            grid60, binding,
            (CaseLabel.GUARANTEED_DILEMMA, CaseLabel.FORCE_DILEMMA))
        _, dth = spec.cell()
        assert len(errs) >= 8
        assert max(errs) <= dth

    def test_degenerate_curve_tracks_avoid_boundary(self, grid60, curves60):
        curve = curves60[CURVE_DEGENERATE]
        spec = grid60.spec
        in_regime = Curve(curve.name, tuple(
            p for p in curve.points if degenerate_regime(spec, p[0])))
        assert in_regime.points
        errs = curve_transition_errors(
            grid60, in_regime,
            (CaseLabel.FORCE_DILEMMA, CaseLabel.AVOID_DILEMMA))
        _, dth = spec.cell()
        assert len(errs) >= 3
        assert max(errs) <= dth

    def test_nominal_curve_tracks_avoid_boundary(self, grid60, curves60):
        curve = curves60[CURVE_NOMINAL]
        spec = grid60.spec
        nominal = Curve(curve.name, tuple(
            p for p in curve.points if not degenerate_regime(spec, p[0])))
        errs = curve_transition_errors(
            grid60, nominal,
            (CaseLabel.FORCE_DILEMMA, CaseLabel.AVOID_DILEMMA))
        _, dth = spec.cell()
        assert len(errs) >= 6
        assert max(errs) <= dth


class TestEmitRegionMap:
    def test_csv_layout_and_content(self, grid60, tmp_path):
        csv = tmp_path / "map.csv"
        curves = tmp_path / "curves.json"
        emit_region_map(grid60, csv, curves, meta={"tag": "t1"})
        lines = csv.read_text().splitlines()
        assert lines[0] == "# tag=t1"
        assert lines[1] == CSV_HEADER
        rows = lines[2:]
        assert len(rows) == 60 * 60
        # rows are radius major in grid order
        r0, th0, lab0, wit0 = rows[0].split(",")
        assert float(r0) == pytest.approx(1.0)
        assert float(th0) == pytest.approx(-math.pi)
        assert lab0 == grid60.label_at(0, 0).value
        assert wit0 == grid60.witnesses[0, 0]
        mid = rows[17 * 60 + 31].split(",")
        assert float(mid[0]) == pytest.approx(grid60.r_values[17], rel=1e-10)
        assert float(mid[1]) == pytest.approx(grid60.theta_values[31],
                                              rel=1e-10)
        assert mid[2] == grid60.label_at(17, 31).value

    def test_curves_json_schema(self, grid60, curves60, tmp_path):
        csv = tmp_path / "map.csv"
        curves = tmp_path / "curves.json"
        emit_region_map(grid60, csv, curves, meta={"tag": "t2"})
        doc = json.loads(curves.read_text())
        assert doc["tag"] == "t2"
        assert [c["name"] for c in doc["curves"]] == list(ALL_CURVE_NAMES)
        by_name = {c["name"]: c for c in doc["curves"]}
        for name, curve in curves60.items():
            pts = by_name[name]["points"]
            assert pts == [[r, th] for r, th in curve.points]

    def test_byte_identical_reruns(self, tmp_path):
        spec = frame_spec(n_r=10, n_theta=10)
        outs = []
        for tag in ("a", "b"):
            csv = tmp_path / f"{tag}.csv"
            curves = tmp_path / f"{tag}.json"
            emit_region_map(run_sweep(spec), csv, curves,
                            meta={"spec": "fixed"})
            outs.append((csv.read_bytes(), curves.read_bytes()))
        assert outs[0] == outs[1]

    def test_tiny_grid_is_quick(self):
        grid = run_sweep(frame_spec(n_r=4, n_theta=4))
        assert grid.codes.shape == (4, 4)
