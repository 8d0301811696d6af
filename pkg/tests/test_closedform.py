import numpy as np
import pytest

from brimode import (ParameterError, SingularPointError, closed_form_intermediates,
                     conversion_efficiency, conversion_efficiency_closed,
                     conversion_efficiency_verbatim, coupling_from_cooperativity,
                     denominator_margins, intensity_mode1_closed,
                     intensity_mode2_closed, solve_steady_numeric, stability_report,
                     steady_amplitudes_closed)
from conftest import decoupled_params, emission_params, random_params, singular_params


def stable_draw(rng, margin_floor=-1e-3, denom_floor=1e-6):
    while True:
        p = random_params(rng)
        if stability_report(p).margin >= margin_floor:
            continue
        m1, m2 = denominator_margins(p)
        if m1 > denom_floor and m2 > denom_floor:
            return p


class TestCorrectedClosedForms:
    def test_decoupled_limit_matches_lorentzian(self):
        p = decoupled_params()
        expected = p.kappa1_ext * p.alpha_p ** 2 / (p.delta1 ** 2 + p.kappa1 ** 2 / 4)
        assert intensity_mode1_closed(p) == pytest.approx(expected, rel=1e-12)
        assert intensity_mode2_closed(p) == pytest.approx(0.0, abs=1e-300)

    def test_mode2_zero_without_conversion_path(self):
        p = emission_params(g2=0.0, g_m=0.0)
        assert intensity_mode2_closed(p) == pytest.approx(0.0, abs=1e-300)

    def test_matches_numeric_over_emission_grid(self):
        for gamma_m in (0.30, 0.45):
            for c2 in np.linspace(0.1, 15, 150):
                p = emission_params(gamma_m=gamma_m,
                                    g2=coupling_from_cooperativity(c2, gamma_m, 2.0))
                amps = solve_steady_numeric(p, warn_unstable=False)
                i1, i2 = abs(amps.a1) ** 2, abs(amps.a2) ** 2
                assert abs(intensity_mode1_closed(p) - i1) / i1 < 1e-8
                assert abs(intensity_mode2_closed(p) - i2) / i2 < 1e-8

    def test_matches_numeric_on_random_stable_draws(self, rng):
        for _ in range(200):
            p = stable_draw(rng)
            amps = solve_steady_numeric(p, warn_unstable=False)
            a1c, a2c = steady_amplitudes_closed(p)
            assert abs(a1c - amps.a1) / max(abs(amps.a1), 1e-300) < 1e-8
            assert abs(a2c - amps.a2) / max(abs(amps.a2), 1e-300) < 1e-8

    def test_quadratic_in_drive(self):
        p = emission_params()
        base1, base2 = intensity_mode1_closed(p), intensity_mode2_closed(p)
        p2 = p.replace(alpha_p=2.0)
        assert intensity_mode1_closed(p2) == pytest.approx(4 * base1, rel=1e-12)
        assert intensity_mode2_closed(p2) == pytest.approx(4 * base2, rel=1e-12)

    def test_singular_denominator_raises(self):
        with pytest.raises(SingularPointError):
            intensity_mode1_closed(singular_params())


class TestVerbatimForms:
    def test_verbatim_diverges_from_corrected(self):
        # the catalogued transcription errors are numerically material
        p = emission_params()
        i1v = intensity_mode1_closed(p, verbatim=True)
        i1c = intensity_mode1_closed(p)
        assert abs(i1v - i1c) / i1c > 1e-6
        i2v = intensity_mode2_closed(p, verbatim=True)
        i2c = intensity_mode2_closed(p)
        assert abs(i2v - i2c) / i2c > 1e-6

    def test_intermediates_are_finite(self):
        inter = closed_form_intermediates(emission_params())
        for name in ("D1", "D2", "D3", "D4", "n1", "n2", "m1", "l1", "l2",
                     "A1R", "A1I", "h1", "h2", "f1", "f2", "R1", "R2", "A2R", "A2I"):
            assert np.isfinite(getattr(inter, name))
        assert np.isfinite(inter.N1).all() if hasattr(inter.N1, "all") else np.isfinite(inter.N1)

    def test_verbatim_mode2_denominator_matches_corrected_structure(self):
        # the mode-2 denominator is the one block printed correctly
        p = emission_params()
        inter = closed_form_intermediates(p)
        from brimode.closedform import _mode2_pieces
        L, m, _, _ = _mode2_pieces(p)
        printed = (inter.R1 ** 2 + inter.R2 ** 2) - (inter.f1 ** 2 + inter.f2 ** 2)
        assert printed == pytest.approx(abs(L) ** 2 - abs(m) ** 2, rel=1e-12)


class TestConversionEfficiency:
    def test_zero_without_conversion_path(self):
        p = emission_params(g2=0.0, g_m=0.0)
        assert conversion_efficiency(p) == pytest.approx(0.0, abs=1e-300)

    def test_invariant_under_pump_rescaling(self):
        p = emission_params()
        e1 = conversion_efficiency(p.replace(alpha_p=1.0))
        e7 = conversion_efficiency(p.replace(alpha_p=7.0))
        assert abs(e1 - e7) / e1 < 1e-12

    def test_peak_location_on_cooperativity_grid(self):
        grid = np.linspace(0.1, 15, 150)
        etas = []
        for c2 in grid:
            p = emission_params(g2=coupling_from_cooperativity(c2, 0.3, 2.0))
            etas.append(conversion_efficiency(p))
        peak_at = grid[int(np.argmax(etas))]
        assert 10.0 <= peak_at <= 14.0

    def test_closed_variant_matches_defining_ratio(self, rng):
        for _ in range(20):
            p = stable_draw(rng)
            assert conversion_efficiency_closed(p) == pytest.approx(
                conversion_efficiency(p), rel=1e-8)

    def test_verbatim_formula_differs(self):
        p = emission_params()
        assert abs(conversion_efficiency_verbatim(p) - conversion_efficiency(p)) \
            / conversion_efficiency(p) > 1e-6

    def test_zero_pump_rejected(self):
        with pytest.raises(ParameterError):
            conversion_efficiency(emission_params(alpha_p=0.0))


class TestStokesSensitivity:
    def test_phonon_amplitude_without_pair_coupling(self):
        # with g1 = 0 the phonon follows b = i g2 a2 / (i omega_m + gamma_m/2)
        p = emission_params(g1=0.0)
        amps = solve_steady_numeric(p)
        dm = 1j * p.omega_m + p.gamma_m / 2
        expected = 1j * p.g2 * amps.a2 / dm
        assert abs(amps.b - expected) < 1e-12 * max(abs(amps.b), 1.0)
