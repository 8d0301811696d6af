"""Dark/bright-mode decomposition of the two optical modes.

The superpositions

    a_B = (g1 a1 + g2 a2) / G,    a_D = (g2 a1 - g1 a2) / G,
    G = sqrt(g1^2 + g2^2),

rotate the optical pair into a bright mode (coupled to the drive through
both channels) and a dark mode.  Under the constraints delta2 = 0,
delta1 = -omega_m and kappa1 = kappa2 the rotated dynamics takes a
compact form whose coefficients this module evaluates, together with
closed-form steady amplitudes of both rotated modes.

As with the intensity closed forms, the published transcription of this
block is unreliable (see TYPO_LEDGER.md); the corrected re-derivation is
the default, obtained by eliminating the phonon and then the dark sector
from the conjugate-doubled system.  Verbatim evaluators are retained for
the divergence catalogue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, ParameterError, SingularPointError
from .params import SystemParams, validate
from .steady import ModeAmplitudes

_SINGULAR_RTOL = 1e-12
_CONSTRAINT_ATOL = 1e-12


@dataclass(frozen=True)
class DarkBrightState:
    """Complex amplitudes of the bright and dark superposition modes."""

    a_b: complex
    a_d: complex


@dataclass(frozen=True)
class DarkBrightCoefficients:
    """Coefficients of the rotated-frame dynamics.

    delta_b/delta_d: effective detunings of bright and dark mode;
    g_bd: bright-dark cross coupling; g_12: dark-phonon coupling;
    g1_tilde/g2_tilde: bright-phonon pair/exchange couplings;
    a_1/a_2: drive projections onto bright and dark mode;
    g_tilde: sqrt(g1^2 + g2^2).
    """

    delta_d: float
    delta_b: float
    g_bd: float
    g_12: float
    g1_tilde: float
    g2_tilde: float
    a_1: float
    a_2: float
    g_tilde: float


@dataclass(frozen=True)
class DarkBrightIntermediates:
    """Verbatim transcription values of the rotated-frame closed form.

    Evaluated exactly as printed in the source text (known to contain
    transcription errors); feeds the verbatim evaluators only.
    """

    B_R: float
    A_D1: float
    A_D2: float
    A_D3: float
    A_D4: float
    A_D5: float
    A_D6: float
    R1: float
    R2: float
    R3: float
    R4: float
    R5: float
    R6: float
    R7: float
    R8: float
    R9: float
    R10: float
    A_B1: float
    A_B2: float
    A_B3: float
    A_B4: float
    A_B5: float
    A_B6: float
    f_a1: float
    f_a2: float
    g_a1: float
    g_a2: float
    h_a1: float
    h_a2: float
    J_a1: float
    J_a2: float


def transform(amps: ModeAmplitudes, g1: float, g2: float) -> DarkBrightState:
    """Rotate optical amplitudes into the bright/dark basis (orthonormal)."""
    g = np.hypot(g1, g2)
    if g == 0.0:
        raise ParameterError("transform undefined for g1 = g2 = 0")
    return DarkBrightState(
        a_b=complex((g1 * amps.a1 + g2 * amps.a2) / g),
        a_d=complex((g2 * amps.a1 - g1 * amps.a2) / g))


def inverse_transform(state: DarkBrightState, g1: float, g2: float) -> ModeAmplitudes:
    """Rotate back to the optical basis.  The phonon slot is returned as zero."""
    g = np.hypot(g1, g2)
    if g == 0.0:
        raise ParameterError("transform undefined for g1 = g2 = 0")
    return ModeAmplitudes(
        a1=complex((g1 * state.a_b + g2 * state.a_d) / g),
        a2=complex((g2 * state.a_b - g1 * state.a_d) / g),
        b=0j)


def _require_rotated_frame(params: SystemParams):
    """The rotated-frame expressions assume delta2 = 0, delta1 = -omega_m, kappa1 = kappa2."""
    v = []
    if abs(params.delta2) > _CONSTRAINT_ATOL:
        v.append(f"delta2 == 0 (got {params.delta2!r})")
    if abs(params.delta1 + params.omega_m) > _CONSTRAINT_ATOL:
        v.append(f"delta1 == -omega_m (got {params.delta1!r})")
    if abs(params.kappa2 - params.kappa1) > _CONSTRAINT_ATOL:
        v.append(f"kappa2 == kappa1 (got {params.kappa2!r})")
    if v:
        raise ConstraintError("rotated-frame constraints violated: " + "; ".join(v))


def coefficients(params: SystemParams, verbatim: bool = False) -> DarkBrightCoefficients:
    """Rotated-frame coefficients for a parameter set.

    The printed cross coupling g_bd carries a stray bare g_m term
    inconsistent with the transformation (and dimensionally anomalous);
    the corrected value drops it.  ``verbatim=True`` keeps it.
    """
    validate(params)
    _require_rotated_frame(params)
    p = params
    g = np.hypot(p.g1, p.g2)
    if g == 0.0:
        raise ParameterError("coefficients undefined for g1 = g2 = 0")
    g2sq = g * g
    a_p = np.sqrt(p.kappa1_ext) * p.alpha_p
    g_bd = (p.g1 * p.g2 * p.omega_m + p.g_m * (p.g2 ** 2 - p.g1 ** 2)) / g2sq
    if verbatim:
        g_bd = (p.g1 * p.g2 * p.omega_m + p.g_m + p.g_m * (p.g2 ** 2 - p.g1 ** 2)) / g2sq
    return DarkBrightCoefficients(
        delta_d=float((p.g2 ** 2 * p.omega_m - 2.0 * p.g_m * p.g1 * p.g2) / g2sq),
        delta_b=float((p.g1 ** 2 * p.omega_m + 2.0 * p.g_m * p.g1 * p.g2) / g2sq),
        g_bd=float(g_bd),
        g_12=float(p.g1 * p.g2 / g),
        g1_tilde=float(p.g1 ** 2 / g),
        g2_tilde=float(p.g2 ** 2 / g),
        a_1=float(a_p * p.g1 / g),
        a_2=float(a_p * p.g2 / g),
        g_tilde=float(g))


def _response_pieces(params: SystemParams):
    """Corrected elimination of phonon and dark sector.

    Returns (P_B, P_Bc, P_A, P, Q, c2, den, scale) where the dark mode
    obeys a_D = P_B a_B + P_Bc a_B* + P_A A2 and the bright mode obeys
    P a_B + Q a_B* = A1 + c2 A2 with den = |P|^2 - |Q|^2.
    """
    p = params
    c = coefficients(p)
    kappa = p.kappa1
    dm = 1j * p.omega_m + p.gamma_m / 2.0
    adm2 = p.omega_m ** 2 + p.gamma_m ** 2 / 4.0

    # phonon elimination
    s_b = c.g1_tilde ** 2 / np.conj(dm) - c.g2_tilde ** 2 / dm
    x = c.g_12 * (c.g1_tilde / np.conj(dm) + c.g2_tilde / dm)
    y = c.g_12 * (c.g2_tilde / np.conj(dm) + c.g1_tilde / dm)
    z = 2j * p.omega_m * c.g_12 ** 2 / adm2   # purely imaginary

    # dark-sector pair (a_D, a_D*) solved in terms of (a_B, a_B*, A2)
    u = kappa / 2.0 - 1j * c.delta_d - z
    det_d = float((abs(u) ** 2 + z ** 2).real)
    scale_d = (abs(u) + abs(z)) ** 2
    if abs(det_d) <= _SINGULAR_RTOL * scale_d:
        raise SingularPointError("dark-sector response denominator vanishes")
    p_b = (np.conj(u) * (1j * c.g_bd + x) - z * np.conj(y)) / det_d
    p_bc = (np.conj(u) * y - z * (-1j * c.g_bd + np.conj(x))) / det_d
    p_a = (np.conj(u) - z) / det_d

    # bright-sector scalar pair
    P = kappa / 2.0 - 1j * c.delta_b - s_b - (1j * c.g_bd + x) * p_b + x * np.conj(p_bc)
    Q = -z - (1j * c.g_bd + x) * p_bc + x * np.conj(p_b)
    c2 = (1j * c.g_bd + x) * p_a - x * np.conj(p_a)
    den = abs(P) ** 2 - abs(Q) ** 2
    scale = (abs(P) + abs(Q)) ** 2
    return p_b, p_bc, p_a, P, Q, c2, den, scale


def response_coefficients(params: SystemParams) -> dict:
    """Corrected complex response of (a_B, a_D) to the two drive projections.

    a_B = a_1 * f_a + a_2 * g_a and a_D = a_1 * h_a + a_2 * J_a, with
    (a_1, a_2) the drive projections from :func:`coefficients`.
    """
    p_b, p_bc, p_a, P, Q, c2, den, scale = _response_pieces(params)
    if abs(den) <= _SINGULAR_RTOL * scale:
        raise SingularPointError("bright-sector response denominator vanishes")
    f_a = (np.conj(P) - Q) / den
    g_a = (np.conj(P) * c2 - Q * np.conj(c2)) / den
    h_a = p_b * f_a + p_bc * np.conj(f_a)
    j_a = p_b * g_a + p_bc * np.conj(g_a) + p_a
    return {"f_a": complex(f_a), "g_a": complex(g_a),
            "h_a": complex(h_a), "J_a": complex(j_a)}


def steady_dark_bright(params: SystemParams) -> DarkBrightState:
    """Closed-form steady bright/dark amplitudes (corrected re-derivation).

    Exact against ``transform(solve_steady_numeric(params))`` wherever
    the system is non-singular.
    """
    c = coefficients(params)
    r = response_coefficients(params)
    return DarkBrightState(
        a_b=c.a_1 * r["f_a"] + c.a_2 * r["g_a"],
        a_d=c.a_1 * r["h_a"] + c.a_2 * r["J_a"])


def dark_bright_intermediates(params: SystemParams) -> DarkBrightIntermediates:
    """Evaluate the verbatim transcription symbols (known-bad, for the catalogue)."""
    validate(params)
    _require_rotated_frame(params)
    p = params
    c = coefficients(p, verbatim=True)
    kappa = p.kappa1
    adm2 = p.omega_m ** 2 + p.gamma_m ** 2 / 4.0
    gsq = c.g1_tilde ** 2 + c.g2_tilde ** 2          # literal reading of the printed combination
    add2 = c.delta_d ** 2 + kappa ** 2 / 4.0
    if add2 == 0.0:
        raise SingularPointError("verbatim dark-sector denominator vanishes")

    b_r = p.omega_m * gsq / adm2
    a_d1 = -c.delta_d * (c.g_bd + c.g_12 * b_r) / add2
    a_d2 = (kappa / 2.0) * (c.g_bd + c.g_12 * b_r) / add2
    a_d3 = c.delta_d * c.g_12 * b_r / add2
    a_d4 = -(kappa / 2.0) * c.g_12 * b_r / add2
    a_d5 = (kappa / 2.0) / add2
    a_d6 = c.delta_d / add2

    bracket = c.g_bd * adm2 + c.g_12 * p.omega_m * gsq
    r1 = (c.delta_b ** 2 + kappa ** 2 / 4.0) * adm2 + p.omega_m * gsq * c.delta_b
    r2 = p.omega_m * kappa / 2.0 * gsq
    r3 = -2.0 * gsq * p.omega_m * c.delta_b
    r4 = gsq * p.omega_m * kappa
    r5 = -c.delta_b * bracket
    r6 = (kappa / 2.0) * bracket
    r7 = -c.g_12 * p.omega_m * c.delta_b * gsq
    r8 = c.g_12 * p.omega_m * kappa / 2.0 * gsq
    r9 = (kappa / 2.0) * adm2
    r10 = c.delta_b * adm2

    a_b1 = r1 - r5 * a_d1 + r6 * a_d2 - r7 * a_d3 - r8 * a_d4
    a_b2 = r2 + r5 * a_d2 + r6 * a_d1 - r7 * a_d4 + r8 * a_d3
    a_b3 = r3 + r5 * a_d3 - r6 * a_d4 + r7 * a_d1 - r8 * a_d2
    a_b4 = r4 + r5 * a_d4 + r6 * a_d3 - r7 * a_d2 + r8 * a_d1
    a_b5 = r5 * a_d5 - r6 * a_d6 + r7 * a_d5 - r8 * a_d6
    a_b6 = r5 * a_d6 - r6 * a_d5 - r7 * a_d6 - r8 * a_d5

    den = a_b1 ** 2 + a_b2 ** 2 - a_b3 ** 2 - a_b4 ** 2
    if den == 0.0:
        raise SingularPointError("verbatim bright-sector denominator vanishes")
    f_a1 = (a_b1 * r9 - a_b2 * r10 + a_b3 * r9 + a_b4 * r10) / den
    f_a2 = (a_b1 * r10 + a_b2 * r9 - a_b3 * r10 + a_b4 * r6) / den   # verbatim: R6 term
    g_a1 = (a_b1 * a_b5 - a_b2 * a_b6 + a_b3 * a_b5 + a_b4 * a_b6) / den
    g_a2 = (a_b2 * a_b5 + a_b1 * a_b6 - a_b3 * a_b6 + a_b4 * a_b5) / den
    h_a1 = a_d1 * f_a1 - a_d2 * f_a2 + a_d3 * f_a1 + a_d4 * f_a2
    h_a2 = a_d1 * f_a2 + a_d2 * f_a1 - a_d3 * f_a2 + a_d4 * f_a1
    j_a1 = a_d1 * g_a1 - a_d2 * g_a2 + a_d3 * g_a1 + a_d4 * g_a2 + a_d5
    j_a2 = a_d1 * g_a2 + a_d2 * g_a1 - a_d3 * g_a2 + a_d4 * g_a1 + a_d6

    return DarkBrightIntermediates(
        B_R=b_r, A_D1=a_d1, A_D2=a_d2, A_D3=a_d3, A_D4=a_d4, A_D5=a_d5, A_D6=a_d6,
        R1=r1, R2=r2, R3=r3, R4=r4, R5=r5, R6=r6, R7=r7, R8=r8, R9=r9, R10=r10,
        A_B1=a_b1, A_B2=a_b2, A_B3=a_b3, A_B4=a_b4, A_B5=a_b5, A_B6=a_b6,
        f_a1=f_a1, f_a2=f_a2, g_a1=g_a1, g_a2=g_a2,
        h_a1=h_a1, h_a2=h_a2, J_a1=j_a1, J_a2=j_a2)


def steady_dark_bright_verbatim(params: SystemParams) -> DarkBrightState:
    """Steady bright/dark amplitudes from the verbatim transcription (known-bad)."""
    c = coefficients(params, verbatim=True)
    i = dark_bright_intermediates(params)
    return DarkBrightState(
        a_b=complex(c.a_1 * (i.f_a1 + 1j * i.f_a2) + c.a_2 * (i.g_a1 + 1j * i.g_a2)),
        a_d=complex(c.a_1 * (i.h_a1 + 1j * i.h_a2) + c.a_2 * (i.J_a1 + 1j * i.J_a2)))
