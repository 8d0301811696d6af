import numpy as np
import pytest
from scipy.linalg import expm

from brimode import (IntegrationError, IntegratorConfig, ModeAmplitudes,
                     ParameterError, SettleError, UnstableSystemError,
                     assemble_drift, integrate, settle, solve_steady_numeric,
                     stability_report)
from brimode._backend import STATUS_UNDERFLOW, available_backends
from brimode.dynamics import real_embedding
from conftest import decoupled_params, emission_params, population_params, random_params


def stable_draw(rng):
    while True:
        p = random_params(rng)
        if stability_report(p).margin < -1e-2:
            return p


class TestIntegratorConfig:
    def test_rejects_bad_tolerances(self):
        with pytest.raises(ParameterError):
            IntegratorConfig(tol_rel=0.5)
        with pytest.raises(ParameterError):
            IntegratorConfig(tol_abs=0.0)
        with pytest.raises(ParameterError):
            IntegratorConfig(dt_initial=-1.0)

    def test_zero_horizon_allowed(self):
        assert IntegratorConfig(t_max=0.0).t_max == 0.0


class TestIntegrate:
    def test_analytic_decay(self):
        # undriven, uncoupled: a1(t) = exp(-(i delta1 + kappa1/2) t)
        p = decoupled_params(alpha_p=0.0)
        initial = ModeAmplitudes(1.0 + 0j, 0j, 0j)
        for t_end in (1.0, 5.0, 10.0):
            config = IntegratorConfig(t_max=t_end, tol_rel=1e-10, tol_abs=1e-12)
            trajectory = integrate(p, initial, config)
            expected = np.exp(-(1j * p.delta1 + p.kappa1 / 2) * t_end)
            assert abs(trajectory.final.a1 - expected) < 1e-8
            assert abs(trajectory.final.a2) < 1e-12

    def test_first_state_is_initial_and_times_increase(self):
        p = emission_params()
        initial = ModeAmplitudes(0.3 - 0.1j, 0.05j, 0j)
        trajectory = integrate(p, initial, IntegratorConfig(t_max=5.0))
        assert trajectory.amplitudes(0).a1 == initial.a1
        assert np.all(np.diff(trajectory.times) > 0)

    def test_converges_to_steady_state(self):
        p = emission_params()
        trajectory = integrate(p, ModeAmplitudes.zero(), IntegratorConfig(t_max=150.0))
        amps = solve_steady_numeric(p)
        assert abs(trajectory.final.a1 - amps.a1) / abs(amps.a1) < 1e-6
        assert abs(trajectory.final.a2 - amps.a2) / abs(amps.a2) < 1e-6

    def test_matrix_exponential_oracle(self, rng):
        # x(t) = x_p + expm(A t)(x0 - x_p) with x_p = -A^{-1} e
        for _ in range(5):
            p = stable_draw(rng)
            A, e = real_embedding(assemble_drift(p))
            x0 = rng.normal(size=12) * 0.3
            xp = np.linalg.solve(A, -e)
            expected = xp + expm(A) @ (x0 - xp)
            # drive the kernel directly so the (possibly asymmetric) real
            # state is used exactly as drawn
            config = IntegratorConfig(t_max=1.0, tol_rel=1e-10, tol_abs=1e-12)
            from brimode import _backend
            status, t, y, *_ = _backend.advance(
                A, e, x0, 0.0, 1.0, config.tol_rel, config.tol_abs,
                config.dt_initial, 0.0, False)
            assert status == 0 and t == 1.0
            assert np.linalg.norm(y - expected) < 1e-7 * max(np.linalg.norm(expected), 1.0)

    def test_conjugation_symmetry_preserved(self):
        p = emission_params()
        config = IntegratorConfig(t_max=30.0)
        trajectory = integrate(p, ModeAmplitudes(0.2 + 0.1j, 0j, 0.05j), config)
        v = trajectory.vectors
        drift = np.abs(v[:, 3:] - v[:, :3].conj()).max()
        assert drift < 10 * config.tol_rel

    def test_zero_horizon_single_point(self):
        p = emission_params()
        initial = ModeAmplitudes(0.5 + 0j, 0j, 0j)
        trajectory = integrate(p, initial, IntegratorConfig(t_max=0.0))
        assert len(trajectory) == 1
        assert trajectory.final.a1 == initial.a1

    def test_contraction_envelope_on_decoupled_params(self):
        # decoupled drift is a normal matrix: ||x(t2)|| <= exp(margin (t2-t1)) ||x(t1)||
        p = decoupled_params(alpha_p=0.0)
        margin = stability_report(p).margin
        trajectory = integrate(p, ModeAmplitudes(1.0, 1.0, 1.0),
                               IntegratorConfig(t_max=10.0, tol_rel=1e-10, tol_abs=1e-12))
        norms = np.linalg.norm(trajectory.vectors, axis=1)
        times = trajectory.times
        for i in range(len(times) - 1):
            bound = norms[i] * np.exp(margin * (times[i + 1] - times[i]))
            assert norms[i + 1] <= bound * (1 + 1e-9)

    def test_underflow_maps_to_integration_error(self, monkeypatch):
        from brimode import dynamics as dyn

        def fake_advance(*args, **kwargs):
            return STATUS_UNDERFLOW, 0.37, np.zeros(12), None, None, 0, 50

        monkeypatch.setattr(dyn._backend, "advance", fake_advance)
        with pytest.raises(IntegrationError, match="0.37"):
            integrate(emission_params(), ModeAmplitudes.zero(), IntegratorConfig(t_max=1.0))


class TestSettle:
    def test_decoupled_settles_to_lorentzian(self):
        p = decoupled_params()
        amps = settle(p, tol=1e-10)
        expected = np.sqrt(p.kappa1_ext) * p.alpha_p / (1j * p.delta1 + p.kappa1 / 2)
        assert abs(amps.a1 - expected) / abs(expected) < 1e-8

    def test_population_point_matches_linear_solve(self):
        # stabilized variant of the population figure (g2 past the gain threshold)
        p = population_params(g2=1.5)
        assert stability_report(p).is_stable
        settled = settle(p, tol=1e-8)
        amps = solve_steady_numeric(p)
        for name in ("a1", "a2", "b"):
            num, dyn = getattr(amps, name), getattr(settled, name)
            assert abs(num - dyn) / abs(num) < 1e-6

    def test_unstable_precondition_rejected(self):
        p = population_params(g2=0.3)
        assert stability_report(p).margin > 0
        with pytest.raises(UnstableSystemError):
            settle(p)

    def test_raising_pair_gain_destabilizes(self):
        # construct instability by raising g1 until the margin flips
        p = emission_params()
        g1 = p.g1
        while stability_report(p.replace(g1=g1)).margin < 0:
            g1 *= 1.5
            assert g1 < 1e3
        with pytest.raises(UnstableSystemError):
            settle(p.replace(g1=g1))

    def test_tolerance_halving_stability(self):
        # the settled state is pinned by the residual target, not by the
        # stepper tolerances: halving them moves it by less than the
        # looser (stopping) tolerance
        p = emission_params()
        tol = 1e-8
        t_max = 50 / abs(stability_report(p).margin)
        loose = IntegratorConfig(tol_rel=1e-10, tol_abs=1e-12, t_max=t_max)
        tight = IntegratorConfig(tol_rel=5e-11, tol_abs=5e-13, t_max=t_max)
        a = settle(p, tol=tol, config=loose)
        b = settle(p, tol=tol, config=tight)
        diff = max(abs(a.a1 - b.a1), abs(a.a2 - b.a2), abs(a.b - b.b))
        assert diff < tol

    def test_nonconvergence_reports_residual(self):
        p = emission_params()
        with pytest.raises(SettleError, match="final residual"):
            settle(p, tol=1e-8, config=IntegratorConfig(t_max=0.5))


class TestBackends:
    def test_underflow_status_reachable(self):
        # denormal tolerances force rejection until the step underflows
        p = emission_params()
        A, e = real_embedding(assemble_drift(p))
        for name, advance in available_backends().items():
            status, t, *_ = advance(A, e, np.zeros(12), 0.0, 100.0,
                                    5e-324, 5e-324, 0.01, 0.0, False)
            assert status == STATUS_UNDERFLOW, name
            assert t < 100.0

    def test_backends_agree(self):
        backends = available_backends()
        if "compiled" not in backends:
            pytest.skip("compiled stepper not built")
        p = emission_params()
        A, e = real_embedding(assemble_drift(p))
        y0 = np.zeros(12)
        results = {
            name: advance(A, e, y0, 0.0, 40.0, 1e-8, 1e-10, 0.01, 0.0, True)
            for name, advance in backends.items()}
        s_py, s_c = results["python"], results["compiled"]
        assert s_py[0] == s_c[0]
        assert abs(s_py[1] - s_c[1]) < 1e-9
        assert len(s_py[3]) == len(s_c[3])
        assert np.allclose(s_py[2], s_c[2], rtol=1e-10, atol=1e-12)
