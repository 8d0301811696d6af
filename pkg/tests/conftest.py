import numpy as np
import pytest

from brimode import SystemParams, coupling_from_cooperativity


def emission_params(**changes) -> SystemParams:
    """Base parameter set of the emission/efficiency figures (C2 via g2)."""
    base = dict(delta1=0.9 - 1.242, delta2=0.9, omega_m=1.242, kappa2=2.0,
                gamma_m=0.3, g_m=0.025, g1=0.4,
                g2=coupling_from_cooperativity(4.0, 0.3, 2.0))
    base.update(changes)
    return SystemParams(**base)


def population_params(**changes) -> SystemParams:
    """Base parameter set of the bright/dark population figure."""
    base = dict(delta1=-1.242, delta2=0.0, omega_m=1.242, kappa2=1.0,
                gamma_m=0.2, g_m=0.025, g1=0.6, g2=0.6)
    base.update(changes)
    return SystemParams(**base)


def decoupled_params(**changes) -> SystemParams:
    base = dict(delta1=0.4, delta2=-0.7, omega_m=1.1, kappa2=1.5,
                gamma_m=0.25, g_m=0.0, g1=0.0, g2=0.0)
    base.update(changes)
    return SystemParams(**base)


def singular_params() -> SystemParams:
    """Pair-gain threshold point where the drift matrix has a zero eigenvalue."""
    omega_m, gamma_m, kappa1 = 1.242, 0.2, 1.0
    delta1 = kappa1 * omega_m / gamma_m
    g1 = np.sqrt(delta1 * omega_m + kappa1 * gamma_m / 4.0)
    return SystemParams(delta1=delta1, delta2=0.3, omega_m=omega_m, kappa2=1.0,
                        gamma_m=gamma_m, g_m=0.0, g1=float(g1), g2=0.0)


def random_params(rng) -> SystemParams:
    kappa2 = rng.uniform(0.3, 3.0)
    return SystemParams(
        delta1=rng.uniform(-2.0, 2.0), delta2=rng.uniform(-2.0, 2.0),
        omega_m=rng.uniform(0.3, 2.0), kappa2=kappa2,
        gamma_m=rng.uniform(0.05, 1.0), g_m=rng.uniform(0.0, 0.3),
        g1=rng.uniform(0.0, 0.8), g2=rng.uniform(0.0, 1.2),
        kappa1_ext=rng.uniform(0.1, 1.0), kappa2_ext=rng.uniform(0.1, 1.0) * kappa2,
        alpha_p=rng.uniform(0.5, 2.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
