"""Closed-form steady-state intensities and conversion efficiency.

The steady amplitudes admit closed forms obtained by eliminating the
phonon mode and one optical mode from the doubled linear system.  The
published transcription of those forms contains several transcription
errors; this module carries both:

* the corrected re-derivation (default, exact against the numeric solve),
* the verbatim transcription behind ``verbatim=True`` flags, retained so
  the divergence can be demonstrated and catalogued (see TYPO_LEDGER.md).

Shared elimination intermediates, with d2 = i*delta2 + kappa2/2 and
dm = i*omega_m + gamma_m/2:

    D1 + i D2 = d2 * dm + g2^2          (mode-2 channel after phonon elimination)
    D3 + i D4 = d1 * conj(dm) - g1^2    (mode-1 channel after phonon elimination)
    N1 = g_m * (omega_m + i gamma_m/2)  (phonon-dressed optical cross coupling)
    N2 = g1 * g2                        (conjugate-sector cross coupling)

Each mode then satisfies a scalar pair  L a + m a* = n  whose solution is
a = (conj(L) n - m conj(n)) / (|L|^2 - |m|^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SingularPointError
from .params import SystemParams, cooperativities, validate
from .steady import solve_steady_numeric

_SINGULAR_RTOL = 1e-12


@dataclass(frozen=True)
class ClosedFormIntermediates:
    """Verbatim transcription values of every named closed-form symbol.

    These reproduce the expressions exactly as printed in the source
    text, including their transcription errors (N1 is a complex number
    even though it is printed as a modulus; m1 is printed as a real
    combination).  They feed the ``verbatim=True`` evaluators only.
    """

    D1: float
    D2: float
    D3: float
    D4: float
    N1: complex
    N2: float
    n1: float
    n2: float
    m1: float
    l1: float
    l2: float
    A1R: float
    A1I: float
    h1: float
    h2: float
    f1: float
    f2: float
    R1: float
    R2: float
    A2R: float
    A2I: float


def _pump_amplitude(params: SystemParams) -> float:
    return float(np.sqrt(params.kappa1_ext) * params.alpha_p)


def _core_symbols(params: SystemParams):
    p = params
    dm = 1j * p.omega_m + p.gamma_m / 2.0
    D1 = p.kappa2 * p.gamma_m / 4.0 - p.delta2 * p.omega_m + p.g2 ** 2
    D2 = p.delta2 * p.gamma_m / 2.0 + p.omega_m * p.kappa2 / 2.0
    D3 = p.kappa1 * p.gamma_m / 4.0 + p.delta1 * p.omega_m - p.g1 ** 2
    D4 = p.delta1 * p.gamma_m / 2.0 - p.kappa1 * p.omega_m / 2.0
    N1 = p.g_m * (p.omega_m + 1j * p.gamma_m / 2.0)
    N2 = p.g1 * p.g2
    return dm, D1, D2, D3, D4, N1, N2


def closed_form_intermediates(params: SystemParams) -> ClosedFormIntermediates:
    """Evaluate every verbatim symbol for a parameter set."""
    validate(params)
    p = params
    a_p = _pump_amplitude(p)
    _, D1, D2, D3, D4, N1, N2 = _core_symbols(p)
    coop = cooperativities(p)
    sq = np.sqrt(coop.c1 * coop.c2) * p.gamma_m * np.sqrt(p.kappa1 * p.kappa2) / 4.0

    e2 = D1 * D1 + D2 * D2
    n1 = a_p * e2 * p.gamma_m / 2.0
    n2 = -a_p * p.omega_m * e2
    m1 = -p.g_m * sq * (2.0 * D1 * p.omega_m + D2 * p.omega_m)
    l1 = D3 * e2 + abs(N1) ** 2 * D1 + N2 ** 2 * D1
    l2 = D4 * e2 - abs(N1) ** 2 * D1 + N2 ** 2 * D2   # verbatim: D1 where D2 belongs
    A1R = n1 * (m1 + l1) + n2 * l2
    A1I = n2 * (l1 - m1) - n1 * l1                    # verbatim: l1 where l2 belongs

    adm2 = p.omega_m ** 2 + p.gamma_m ** 2 / 4.0
    h1 = a_p * (D4 * p.g_m * adm2 - N2 * (D3 * p.gamma_m / 2.0 - p.omega_m * D4))
    h2 = a_p * (D3 * p.g_m * adm2 - N2 * (D4 * p.gamma_m / 2.0 - p.omega_m * D3))  # verbatim sign
    f1 = -2.0 * p.g_m * sq * p.omega_m * D3
    f2 = p.g_m * np.sqrt(coop.c1 * coop.c2) * p.gamma_m ** 2 * np.sqrt(p.kappa1 * p.kappa2) / 4.0 * D3
    e3 = D3 * D3 + D4 * D4
    R1 = D1 * e3 + D3 * (abs(N1) ** 2 + N2 ** 2)
    R2 = D2 * e3 + D4 * (N2 ** 2 - abs(N1) ** 2)
    A2R = h1 * (f1 + R1) + h2 * (f2 + R2)
    A2I = h1 * (f2 - R2) + h2 * (R1 - f1)

    return ClosedFormIntermediates(
        D1=D1, D2=D2, D3=D3, D4=D4, N1=N1, N2=N2, n1=n1, n2=n2, m1=m1,
        l1=l1, l2=l2, A1R=A1R, A1I=A1I, h1=h1, h2=h2, f1=f1, f2=f2,
        R1=R1, R2=R2, A2R=A2R, A2I=A2I)


def _mode1_pieces(params: SystemParams):
    """Corrected scalar pair for mode 1: L a1 + m a1* = n."""
    p = params
    dm, D1, D2, D3, D4, N1, N2 = _core_symbols(p)
    e2 = D1 * D1 + D2 * D2
    L = (D3 + 1j * D4) * e2 + abs(N1) ** 2 * (D1 - 1j * D2) + N2 ** 2 * (D1 + 1j * D2)
    m = 2.0 * N1 * N2 * D1
    n = _pump_amplitude(p) * np.conj(dm) * e2
    scale = (e2 + (D3 * D3 + D4 * D4) + abs(N1) ** 2 + N2 ** 2) ** 2
    return L, m, n, scale


def _mode2_pieces(params: SystemParams):
    """Corrected scalar pair for mode 2: L a2 + m a2* = n."""
    p = params
    dm, D1, D2, D3, D4, N1, N2 = _core_symbols(p)
    e3 = D3 * D3 + D4 * D4
    L = (D1 + 1j * D2) * e3 + abs(N1) ** 2 * (D3 - 1j * D4) + N2 ** 2 * (D3 + 1j * D4)
    m = 2.0 * np.conj(N1) * N2 * D3
    n = -_pump_amplitude(p) * (np.conj(N1) * np.conj(dm) * (D3 - 1j * D4)
                               + N2 * dm * (D3 + 1j * D4))
    scale = ((D1 * D1 + D2 * D2) + e3 + abs(N1) ** 2 + N2 ** 2) ** 2
    return L, m, n, scale


def _solve_pair(L: complex, m: complex, n: complex, scale: float) -> complex:
    den = abs(L) ** 2 - abs(m) ** 2
    if abs(den) <= _SINGULAR_RTOL * scale:
        raise SingularPointError(
            f"closed-form denominator vanishes (|L|^2 - |m|^2 = {den:.3e}); "
            "parameter set sits on a parametric-instability threshold")
    return (np.conj(L) * n - m * np.conj(n)) / den


def denominator_margins(params: SystemParams) -> tuple[float, float]:
    """Normalized distance of both closed-form denominators from singularity.

    Used to exclude near-singular draws from randomized cross-checks.
    """
    L1, m1_, _, s1 = _mode1_pieces(params)
    L2, m2_, _, s2 = _mode2_pieces(params)
    return (abs(abs(L1) ** 2 - abs(m1_) ** 2) / s1,
            abs(abs(L2) ** 2 - abs(m2_) ** 2) / s2)


def steady_amplitudes_closed(params: SystemParams) -> tuple[complex, complex]:
    """Corrected closed-form complex steady amplitudes (a1, a2)."""
    validate(params)
    a1 = _solve_pair(*_mode1_pieces(params))
    a2 = _solve_pair(*_mode2_pieces(params))
    return complex(a1), complex(a2)


def intensity_mode1_closed(params: SystemParams, verbatim: bool = False) -> float:
    """Steady intracavity intensity |a1|^2 from the closed form.

    Default is the corrected re-derivation; ``verbatim=True`` evaluates
    the transcription as printed (known-bad, for comparison only).
    """
    validate(params)
    if verbatim:
        i = closed_form_intermediates(params)
        den = (i.l1 ** 2 + i.l2 ** 2 - i.m1 ** 2) ** 2
        if den == 0.0:
            raise SingularPointError("verbatim mode-1 denominator vanishes")
        return (i.A1R ** 2 + i.A1I ** 2) / den
    a1 = _solve_pair(*_mode1_pieces(params))
    return float(abs(a1) ** 2)


def intensity_mode2_closed(params: SystemParams, verbatim: bool = False) -> float:
    """Steady intracavity intensity |a2|^2 from the closed form."""
    validate(params)
    if verbatim:
        i = closed_form_intermediates(params)
        den = ((i.R1 ** 2 + i.R2 ** 2) - (i.f1 ** 2 + i.f2 ** 2)) ** 2
        if den == 0.0:
            raise SingularPointError("verbatim mode-2 denominator vanishes")
        return (i.A2R ** 2 + i.A2I ** 2) / den
    a2 = _solve_pair(*_mode2_pieces(params))
    return float(abs(a2) ** 2)


def conversion_efficiency(params: SystemParams) -> float:
    """Mode-conversion efficiency: mode-2 output flux over mode-1 input flux.

    eta = kappa2_ext |a2|^2 / |alpha_p|^2 with a2 from the canonical
    numeric solve.  Invariant under rescaling of the pump amplitude.
    """
    validate(params)
    if params.alpha_p <= 0:
        raise ParameterError("alpha_p > 0 required for a conversion ratio")
    amps = solve_steady_numeric(params, warn_unstable=False)
    return float(params.kappa2_ext * abs(amps.a2) ** 2 / params.alpha_p ** 2)


def conversion_efficiency_closed(params: SystemParams) -> float:
    """Corrected closed-form variant of :func:`conversion_efficiency`."""
    validate(params)
    if params.alpha_p <= 0:
        raise ParameterError("alpha_p > 0 required for a conversion ratio")
    return float(params.kappa2_ext * intensity_mode2_closed(params) / params.alpha_p ** 2)


def conversion_efficiency_verbatim(params: SystemParams) -> float:
    """Efficiency formula exactly as printed (unsquared numerator; known-bad).

    Uses the verbatim intermediates throughout.  Kept for the divergence
    catalogue; not a physical efficiency.
    """
    validate(params)
    if params.alpha_p <= 0:
        raise ParameterError("alpha_p > 0 required for a conversion ratio")
    p = params
    i = closed_form_intermediates(p)
    a_p = _pump_amplitude(p)
    eta1 = p.kappa1_ext / p.kappa1
    eta2 = p.kappa2_ext / p.kappa2
    den = ((i.R1 ** 2 + i.R2 ** 2) - (i.f1 ** 2 + i.f2 ** 2)) ** 2
    if den == 0.0:
        raise SingularPointError("verbatim efficiency denominator vanishes")
    return eta1 * eta2 * p.kappa1 * p.kappa2 * (i.A2R / a_p + i.A2I / a_p) / den
