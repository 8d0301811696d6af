"""Linearized mean-field dynamics and its steady state.

The three complex mode amplitudes (a1, a2, b) obey a driven linear system
in which a1 couples to the phonon conjugate b* (pair creation) while a2
exchanges quanta with b.  Because conjugate amplitudes mix, the state is
doubled to x = (a1, a2, b, a1*, a2*, b*) and the dynamics is

    dx/dt = M x + d,

with M the 6x6 drift matrix and d the pump drive.  The steady state is
the solution of M x = -d; this linear solve is the canonical result that
every closed-form evaluator in the package is checked against.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SingularSteadyStateError, UnstableSteadyStateWarning
from .params import SystemParams, validate

COND_LIMIT = 1e12
"""Condition-number threshold above which the steady state is treated as non-unique."""


@dataclass(frozen=True)
class ModeAmplitudes:
    """Complex amplitudes of optical mode 1, optical mode 2 and the phonon mode."""

    a1: complex
    a2: complex
    b: complex

    def as_vector(self) -> np.ndarray:
        """Doubled state vector (a1, a2, b, a1*, a2*, b*)."""
        v = np.array([self.a1, self.a2, self.b], dtype=complex)
        return np.concatenate([v, v.conj()])

    @staticmethod
    def zero() -> "ModeAmplitudes":
        return ModeAmplitudes(0j, 0j, 0j)


@dataclass(frozen=True)
class DriftSystem:
    """Coefficient matrix and drive vector of the doubled linear system."""

    matrix: np.ndarray
    drive: np.ndarray


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalues of the homogeneous drift matrix and their largest real part."""

    eigenvalues: np.ndarray
    margin: float

    @property
    def is_stable(self) -> bool:
        return self.margin < 0.0


def assemble_drift(params: SystemParams) -> DriftSystem:
    """Build M and d such that dx/dt = M x + d for x = (a1, a2, b, a1*, a2*, b*)."""
    validate(params)
    p = params
    d1 = 1j * p.delta1 + p.kappa1 / 2.0
    d2 = 1j * p.delta2 + p.kappa2 / 2.0
    dm = 1j * p.omega_m + p.gamma_m / 2.0

    M = np.zeros((6, 6), dtype=complex)
    M[0, 0] = -d1
    M[0, 1] = 1j * p.g_m
    M[0, 5] = 1j * p.g1      # mode 1 couples to the phonon conjugate
    M[1, 0] = 1j * p.g_m
    M[1, 1] = -d2
    M[1, 2] = 1j * p.g2      # mode 2 exchanges quanta with the phonon
    M[2, 1] = 1j * p.g2
    M[2, 2] = -dm
    M[2, 3] = 1j * p.g1
    # Conjugate sector: rows are elementwise conjugates with the
    # conjugate/unconjugate column blocks swapped.
    M[3:, 3:] = M[:3, :3].conj()
    M[3:, :3] = M[:3, 3:].conj()

    a_p = np.sqrt(p.kappa1_ext) * p.alpha_p
    d = np.array([a_p, 0, 0, np.conj(a_p), 0, 0], dtype=complex)
    return DriftSystem(matrix=M, drive=d)


def residual(params: SystemParams, amps: ModeAmplitudes) -> float:
    """Norm of the equation-of-motion right-hand sides at ``amps`` with zero time derivative."""
    system = assemble_drift(params)
    x = amps.as_vector()
    return float(np.linalg.norm(system.matrix @ x + system.drive))


def stability_report(params: SystemParams) -> StabilityReport:
    """Eigenvalues of the homogeneous drift matrix; margin is the largest real part."""
    system = assemble_drift(params)
    eigenvalues = np.linalg.eigvals(system.matrix)
    return StabilityReport(eigenvalues=eigenvalues, margin=float(eigenvalues.real.max()))


def steady_state_vector(params: SystemParams) -> np.ndarray:
    """Raw 6-component steady solution of M x = -d (no symmetry reduction).

    The full doubled system is solved rather than a 3-component
    reduction because the pair coupling mixes the conjugate sectors;
    conjugation symmetry of the result is a solve property, not an
    enforced constraint.
    """
    system = assemble_drift(params)
    cond = np.linalg.cond(system.matrix)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularSteadyStateError(
            f"no unique steady state: drift matrix condition {cond:.3e} exceeds {COND_LIMIT:.0e}")
    return np.linalg.solve(system.matrix, -system.drive)


def solve_steady_numeric(params: SystemParams, warn_unstable: bool = True) -> ModeAmplitudes:
    """Canonical steady state from the dense linear solve M x = -d.

    Raises :class:`SingularSteadyStateError` when the drift matrix is
    singular beyond ``COND_LIMIT``.  For unstable parameter sets the
    algebraic steady state still exists; it is returned with an
    :class:`UnstableSteadyStateWarning` (physically unreachable).
    """
    x = steady_state_vector(params)
    if warn_unstable:
        report = stability_report(params)
        if not report.is_stable:
            warnings.warn(
                f"steady state of an unstable system (margin {report.margin:+.3e}); "
                "returned amplitudes are not dynamically reachable",
                UnstableSteadyStateWarning, stacklevel=2)
    return ModeAmplitudes(a1=complex(x[0]), a2=complex(x[1]), b=complex(x[2]))
