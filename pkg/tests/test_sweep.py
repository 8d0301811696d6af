import io
import json

import numpy as np
import pytest

from brimode import (ConfigError, ParameterError, SweepSpec, cooperativity,
                     figure_dataset, run_sweep)
from brimode.sweep import _apply_parameter
from conftest import emission_params, population_params, singular_params


def column(result, name):
    return np.asarray(result.columns[name], dtype=float)


class TestSweepSpec:
    def test_rejects_unknown_parameter(self):
        with pytest.raises(ParameterError):
            SweepSpec(parameter="kappa1", start=0, stop=1, points=5)

    def test_rejects_bad_grid(self):
        with pytest.raises(ParameterError):
            SweepSpec(parameter="g2", start=1.0, stop=0.5, points=5)
        with pytest.raises(ParameterError):
            SweepSpec(parameter="g2", start=0.0, stop=1.0, points=1)


class TestRunSweep:
    def test_constant_sweep_is_constant(self):
        p = emission_params()
        spec = SweepSpec(parameter="g2", start=p.g2, stop=p.g2 + 1e-9, points=2)
        result = run_sweep(p, spec, {"i1", "i2"})
        for name in ("i1", "i2"):
            lo, hi = result.columns[name]
            assert abs(hi - lo) / max(abs(lo), 1e-300) < 1e-8

    def test_cooperativity_sweep_moves_the_coupling(self):
        p = emission_params()
        for c2 in (0.5, 4.0, 11.0):
            moved = _apply_parameter(p, "c2", c2)
            assert cooperativity(moved.g2, moved.gamma_m, moved.kappa2) == pytest.approx(
                c2, rel=1e-12)
            assert moved.gamma_m == p.gamma_m and moved.kappa2 == p.kappa2

    def test_unknown_observable_rejected(self):
        spec = SweepSpec(parameter="c2", start=0.1, stop=15, points=3)
        with pytest.raises(ConfigError, match="emission"):
            run_sweep(emission_params(), spec, {"emission"})

    def test_emission_sweep_is_unimodal_with_interior_peak(self):
        spec = SweepSpec(parameter="c2", start=0.1, stop=15, points=150)
        result = run_sweep(emission_params(), spec, {"i2"})
        values = column(result, "i2")
        k = int(np.argmax(values))
        assert 0 < k < len(values) - 1
        assert np.all(np.diff(values[:k + 1]) > 0)
        assert np.all(np.diff(values[k:]) < 0)

    def test_damping_comparison_claims(self):
        spec = SweepSpec(parameter="c2", start=0.1, stop=15, points=150)
        eta = {}
        for gamma_m in (0.30, 0.45):
            result = run_sweep(emission_params(gamma_m=gamma_m), spec, {"eta"})
            eta[gamma_m] = column(result, "eta")
        assert eta[0.30].max() > eta[0.45].max()
        assert np.argmax(eta[0.30]) > np.argmax(eta[0.45])

    def test_margin_column_and_clean_rows(self):
        spec = SweepSpec(parameter="c2", start=0.1, stop=15, points=40)
        result = run_sweep(emission_params(), spec, {"i1", "margin"})
        margins = column(result, "margin")
        assert np.all(margins < 0)
        assert all(f == "" for f in result.columns["flag"])
        assert np.all(np.isfinite(column(result, "i1")))

    def test_unstable_rows_flagged_with_values(self):
        spec = SweepSpec(parameter="g2", start=0.05, stop=1.2, points=10)
        result = run_sweep(population_params(), spec, {"pop_bright", "pop_dark"})
        assert all(f == "unstable" for f in result.columns["flag"])
        assert np.all(np.isfinite(column(result, "pop_bright")))

    def test_singular_rows_carry_no_values(self):
        p = singular_params()
        spec = SweepSpec(parameter="g1", start=p.g1 - 1e-9, stop=p.g1 + 1e-9, points=3)
        result = run_sweep(p, spec, {"i1"})
        flags = result.columns["flag"]
        assert flags[1] == "singular"
        assert not np.isfinite(result.columns["i1"][1])
        assert np.isfinite(result.columns["i1"][0])

    def test_deterministic(self):
        spec = SweepSpec(parameter="c2", start=0.1, stop=15, points=30)
        a = run_sweep(emission_params(), spec, {"i1", "eta"})
        b = run_sweep(emission_params(), spec, {"i1", "eta"})
        assert a.columns == b.columns

    def test_grid_refinement_keeps_argmax(self):
        coarse = run_sweep(emission_params(),
                           SweepSpec(parameter="c2", start=0.1, stop=15, points=150),
                           {"i2"})
        fine = run_sweep(emission_params(),
                         SweepSpec(parameter="c2", start=0.1, stop=15, points=300),
                         {"i2"})
        coarse_grid = column(coarse, "c2")
        argmax_coarse = coarse_grid[int(np.argmax(column(coarse, "i2")))]
        argmax_fine = column(fine, "c2")[int(np.argmax(column(fine, "i2")))]
        step = coarse_grid[1] - coarse_grid[0]
        assert abs(argmax_fine - argmax_coarse) < step


class TestSerialization:
    def test_csv_round_trip_full_precision(self):
        spec = SweepSpec(parameter="c2", start=0.1, stop=15, points=5)
        result = run_sweep(emission_params(), spec, {"i1"})
        buffer = io.StringIO()
        result.write_csv(buffer)
        text = buffer.getvalue()
        assert text.endswith("\n")
        lines = text.splitlines()
        assert lines[0] == "c2,i1,margin,flag"
        parsed = float(lines[1].split(",")[1])
        assert parsed == result.columns["i1"][0]

    def test_csv_empty_cells_for_singular_rows(self):
        p = singular_params()
        spec = SweepSpec(parameter="g1", start=p.g1 - 1e-9, stop=p.g1 + 1e-9, points=3)
        result = run_sweep(p, spec, {"i1"})
        buffer = io.StringIO()
        result.write_csv(buffer)
        singular_row = buffer.getvalue().splitlines()[2]
        assert ",," in singular_row and singular_row.endswith("singular")

    def test_json_document(self):
        spec = SweepSpec(parameter="c2", start=0.1, stop=15, points=4)
        result = run_sweep(emission_params(), spec, {"eta"})
        buffer = io.StringIO()
        result.write_json(buffer)
        doc = json.loads(buffer.getvalue())
        assert doc["spec"]["parameter"] == "c2"
        assert doc["base"]["kappa2"] == 2.0
        assert len(doc["columns"]["eta"]) == 4


class TestFigureDatasets:
    def test_unknown_identifier(self):
        with pytest.raises(ConfigError, match="unknown figure id"):
            figure_dataset("fig9")

    def test_population_figure_curves(self):
        bright, dark = figure_dataset("fig5")
        assert bright.label == "bright" and dark.label == "dark"
        pop_d = column(dark, "pop_dark")
        assert np.all(np.diff(pop_d) > 0)  # dark population strictly rises
        assert bright.meta["pump_normalized"] and "max_normalization" in bright.meta
        assert max(column(bright, "pop_bright").max(), pop_d.max()) == pytest.approx(1.0)

    def test_emission_figure_peak_ordering(self):
        curves = {r.label: r for r in figure_dataset("fig2a")}
        grid = column(curves["gamma_m=0.30"], "c2")
        argmax_30 = grid[int(np.argmax(column(curves["gamma_m=0.30"], "i1")))]
        argmax_45 = grid[int(np.argmax(column(curves["gamma_m=0.45"], "i1")))]
        assert argmax_45 < argmax_30

    def test_mode2_peak_grows_with_c1(self):
        curves = {r.label: r for r in figure_dataset("fig3b")}
        assert column(curves["C1=2.13"], "i2").max() > column(curves["C1=1.2"], "i2").max()

    def test_efficiency_not_normalized(self):
        for result in figure_dataset("fig4a"):
            assert "max_normalization" not in result.meta
