"""Time-domain integration of the mean-field equations.

Serves as an independent oracle for the steady-state solver: a stable
system relaxed from any initial condition must land on the linear-solve
result.  Integration runs on the real-imaginary split of the doubled
system (12 real components), so the stepper kernel stays real-valued.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import IntegrationError, ParameterError, SettleError, UnstableSystemError
from .params import SystemParams, validate
from .steady import DriftSystem, ModeAmplitudes, assemble_drift, stability_report

_SETTLE_HORIZON_FACTOR = 50.0  # residual decays ~exp(margin t); 50/|margin| is far past any tol


@dataclass(frozen=True)
class IntegratorConfig:
    """Adaptive-stepper settings (times in units of 1/kappa1)."""

    dt_initial: float = 0.01
    tol_abs: float = 1e-10
    tol_rel: float = 1e-8
    t_max: float = 200.0

    def __post_init__(self):
        v = []
        if not self.dt_initial > 0:
            v.append("dt_initial > 0")
        for name in ("tol_abs", "tol_rel"):
            t = getattr(self, name)
            if not 0 < t <= 1e-2:
                v.append(f"0 < {name} <= 1e-2")
        # t_max = 0 is allowed: it yields the trivial single-point trajectory.
        if self.t_max < 0:
            v.append("t_max >= 0")
        if v:
            raise ParameterError(v)


@dataclass(frozen=True)
class Trajectory:
    """Accepted integration points: times and the doubled complex state at each."""

    times: np.ndarray
    vectors: np.ndarray  # (n_points, 6) complex, columns (a1, a2, b, a1*, a2*, b*)

    @property
    def states(self) -> np.ndarray:
        """(n_points, 3) complex array of (a1, a2, b)."""
        return self.vectors[:, :3]

    def amplitudes(self, index: int) -> ModeAmplitudes:
        a1, a2, b = self.vectors[index, :3]
        return ModeAmplitudes(a1=complex(a1), a2=complex(a2), b=complex(b))

    @property
    def final(self) -> ModeAmplitudes:
        return self.amplitudes(-1)

    def __len__(self) -> int:
        return len(self.times)


def real_embedding(system: DriftSystem) -> tuple[np.ndarray, np.ndarray]:
    """Real 12-dim form (A, e) of the complex doubled system (M, d)."""
    M, d = system.matrix, system.drive
    n = M.shape[0]
    A = np.empty((2 * n, 2 * n))
    A[:n, :n] = M.real
    A[:n, n:] = -M.imag
    A[n:, :n] = M.imag
    A[n:, n:] = M.real
    e = np.concatenate([d.real, d.imag])
    return A, e


def _to_real(x: np.ndarray) -> np.ndarray:
    return np.concatenate([x.real, x.imag])


def _to_complex(y: np.ndarray) -> np.ndarray:
    n = y.size // 2
    return y[:n] + 1j * y[n:]


def integrate(params: SystemParams, initial: ModeAmplitudes,
              config: IntegratorConfig) -> Trajectory:
    """Integrate the mean-field equations from ``initial`` up to ``config.t_max``.

    Every accepted step is recorded.  Conjugation symmetry of the state
    is preserved by the dynamics itself (the drift matrix commutes with
    the conjugate-sector swap), not enforced after the fact.
    """
    validate(params)
    A, e = real_embedding(assemble_drift(params))
    y0 = _to_real(initial.as_vector())
    status, t, _, times, states, _, _ = _backend.advance(
        A, e, y0, 0.0, config.t_max, config.tol_rel, config.tol_abs,
        config.dt_initial, 0.0, True)
    if status == _backend.STATUS_UNDERFLOW:
        raise IntegrationError(f"step-size underflow at t = {t:.6g}")
    vectors = np.array([_to_complex(y) for y in states])
    return Trajectory(times=np.asarray(times, dtype=float), vectors=vectors)


def settle(params: SystemParams, tol: float = 1e-8,
           config: IntegratorConfig | None = None) -> ModeAmplitudes:
    """Relax from the zero state until the steady-state residual is below tol*||d||.

    Requires a stable system (margin < 0); the default horizon is
    50/|margin|.  The default stepper tolerances are two orders below
    ``tol``: the reachable residual floor is set by the local error
    control, so the stepper must resolve well past the stopping target.
    Raises :class:`SettleError` when the horizon is reached without
    convergence.
    """
    validate(params)
    if not tol > 0:
        raise ParameterError("tol > 0")
    report = stability_report(params)
    if not report.is_stable:
        raise UnstableSystemError(
            f"settle requires a stable system; margin = {report.margin:+.3e}")
    system = assemble_drift(params)
    A, e = real_embedding(system)
    drive_norm = float(np.linalg.norm(e))
    if config is None:
        tol_rel = min(1e-8, max(tol * 1e-2, 1e-13))
        config = IntegratorConfig(t_max=_SETTLE_HORIZON_FACTOR / abs(report.margin),
                                  tol_rel=tol_rel, tol_abs=tol_rel * 1e-2)
    resid_tol = tol * drive_norm if drive_norm > 0 else tol
    status, t, y, _, _, _, _ = _backend.advance(
        A, e, np.zeros(A.shape[0]), 0.0, config.t_max, config.tol_rel,
        config.tol_abs, config.dt_initial, resid_tol, False)
    if status == _backend.STATUS_UNDERFLOW:
        raise IntegrationError(f"step-size underflow at t = {t:.6g}")
    if status != _backend.STATUS_RESIDUAL:
        final_residual = float(np.linalg.norm(A @ y + e))
        raise SettleError(
            f"did not settle within t_max = {config.t_max:.6g}; "
            f"final residual {final_residual:.3e} (target {resid_tol:.3e})")
    x = _to_complex(y)
    return ModeAmplitudes(a1=complex(x[0]), a2=complex(x[1]), b=complex(x[2]))
