"""Parameter sets, coupling-rate formulas and validation.

Two layers of description coexist:

* :class:`CrystalParams` carries the SI-unit properties of the crystal and
  cavity geometry.  Only :func:`compute_g0` and :func:`brillouin_frequency`
  consume SI quantities.
* :class:`SystemParams` carries the dimensionless linearized-model
  parameters.  Every rate is expressed in units of the mode-1 decay
  ``kappa1``, which is therefore pinned to 1 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .errors import ParameterError

C_VACUUM = 299792458.0
"""Vacuum speed of light, m/s."""

HBAR = 1.054571817e-34
"""Reduced Planck constant, J s (2018 CODATA)."""


@dataclass(frozen=True)
class CrystalParams:
    """SI-unit crystal and cavity geometry properties.

    n: crystal refractive index; n_eff: effective index of the optical
    mode; p13: photoelastic constant; rho: mass density (kg/m^3);
    A: crystal cross-section (m^2); L_ac: crystal thickness (m);
    L_opt: mirror spacing (m); v_a: sound speed in the crystal (m/s).
    """

    n: float
    n_eff: float
    p13: float
    rho: float
    A: float
    L_ac: float
    L_opt: float
    v_a: float

    def __post_init__(self):
        bad = [f.name for f in fields(self)
               if not (getattr(self, f.name) > 0 and math.isfinite(getattr(self, f.name)))]
        violations = [f"{name} > 0" for name in bad]
        if not bad:
            if self.L_ac > self.L_opt:
                violations.append("L_ac <= L_opt")
            if not (1.0 <= self.n <= 5.0):
                violations.append("1 <= n <= 5")
        if violations:
            raise ParameterError(violations)


@dataclass(frozen=True)
class SystemParams:
    """Dimensionless linearized-model parameters, in units of kappa1.

    delta1/delta2 are the mode detunings from the pump, omega_m the phonon
    frequency, g_m the direct optical-optical coupling, g1 the
    phonon-pair (Stokes) coupling of mode 1 and g2 the phonon-exchange
    (anti-Stokes) coupling of mode 2.  ``kappa2_ext`` defaults to
    ``kappa2 / 2`` so both ports share the same output coupling ratio.
    """

    delta1: float
    delta2: float
    omega_m: float
    kappa2: float
    gamma_m: float
    g_m: float
    g1: float
    g2: float
    kappa1: float = 1.0
    kappa1_ext: float = 0.5
    kappa2_ext: float | None = None
    alpha_p: float = 1.0

    def __post_init__(self):
        if self.kappa2_ext is None:
            object.__setattr__(self, "kappa2_ext", self.kappa2 / 2.0)

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class Cooperativities:
    """Dimensionless cooperativities 4 g_i^2 / (gamma_m kappa_i) of the two modes."""

    c1: float
    c2: float


def validate(params: SystemParams) -> SystemParams:
    """Return ``params`` unchanged if every invariant holds.

    Raises :class:`ParameterError` listing each violated invariant;
    values are never clamped.  Idempotent by construction.
    """
    v = []
    for f in fields(params):
        value = getattr(params, f.name)
        if not math.isfinite(value):
            v.append(f"{f.name} finite")
    if v:
        raise ParameterError(v)
    if params.kappa1 != 1.0:
        v.append("kappa1 == 1 (normalization unit)")
    if not params.kappa2 > 0:
        v.append("kappa2 > 0")
    if not params.gamma_m > 0:
        v.append("gamma_m > 0")
    if not params.omega_m > 0:
        v.append("omega_m > 0")
    for g in ("g_m", "g1", "g2"):
        if getattr(params, g) < 0:
            v.append(f"{g} >= 0")
    if not 0 < params.kappa1_ext <= params.kappa1:
        v.append("0 < kappa1_ext <= kappa1")
    if not 0 < params.kappa2_ext <= params.kappa2:
        v.append("0 < kappa2_ext <= kappa2")
    if params.alpha_p < 0:
        v.append("alpha_p >= 0")
    if v:
        raise ParameterError(v)
    return params


def compute_g0(crystal: CrystalParams, omega1: float, omega_m: float,
               hbar: float = HBAR) -> float:
    """Single-photon optomechanical coupling rate in rad/s.

    omega1 is the optical angular frequency and omega_m the acoustic
    angular frequency, both rad/s.  Scales as omega1^2 and omega_m^(-1/2).
    """
    if not (omega1 > 0 and omega_m > 0 and hbar > 0):
        raise ParameterError("omega1, omega_m, hbar > 0")
    zp = math.sqrt(hbar / (crystal.rho * crystal.A * crystal.L_ac * omega_m))
    return (omega1 ** 2 * crystal.n ** 5 * crystal.p13
            / (2.0 * C_VACUUM * crystal.n_eff ** 2)
            * zp * (crystal.L_ac / crystal.L_opt))


def brillouin_frequency(omega_j: float, n: float, v_a: float, v_c: float) -> float:
    """Acoustic frequency phase-matching two optical modes: 2 omega_j n v_a / v_c.

    ``v_c`` is an explicit input: the quoted value in the source text is
    consistent neither with the vacuum speed nor with c/n (see
    TYPO_LEDGER.md), so no choice is baked in.
    """
    if not (omega_j > 0 and n > 0 and v_a > 0 and v_c > 0):
        raise ParameterError("omega_j, n, v_a, v_c > 0")
    return 2.0 * omega_j * n * v_a / v_c


def cooperativity(g: float, gamma_m: float, kappa: float) -> float:
    """4 g^2 / (gamma_m kappa)."""
    if not (gamma_m > 0 and kappa > 0):
        raise ParameterError("gamma_m, kappa > 0")
    return 4.0 * g * g / (gamma_m * kappa)


def coupling_from_cooperativity(c: float, gamma_m: float, kappa: float) -> float:
    """Nonnegative coupling g with cooperativity(g, gamma_m, kappa) == c."""
    if c < 0:
        raise ParameterError("c >= 0")
    if not (gamma_m > 0 and kappa > 0):
        raise ParameterError("gamma_m, kappa > 0")
    return math.sqrt(c * gamma_m * kappa) / 2.0


def cooperativities(params: SystemParams) -> Cooperativities:
    """Cooperativities of both optical modes for a parameter set."""
    return Cooperativities(
        c1=cooperativity(params.g1, params.gamma_m, params.kappa1),
        c2=cooperativity(params.g2, params.gamma_m, params.kappa2),
    )
