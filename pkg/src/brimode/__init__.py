"""Mean-field model of phonon-mediated conversion between two optical cavity modes.

Public surface:

* :mod:`brimode.params` -- parameter sets, coupling-rate formulas, validation
* :mod:`brimode.steady` -- drift system, canonical steady-state solve, stability
* :mod:`brimode.closedform` -- closed-form intensities and conversion efficiency
* :mod:`brimode.dynamics` -- adaptive time integration and relaxation oracle
* :mod:`brimode.darkbright` -- bright/dark mode decomposition and closed forms
* :mod:`brimode.sweep` -- parameter sweeps and reference-figure datasets
* :mod:`brimode.ledger` -- printed-vs-corrected reconciliation catalogue
"""

from ._backend import COMPILED
from .closedform import (ClosedFormIntermediates, closed_form_intermediates,
                         conversion_efficiency, conversion_efficiency_closed,
                         conversion_efficiency_verbatim, denominator_margins,
                         intensity_mode1_closed, intensity_mode2_closed,
                         steady_amplitudes_closed)
from .config import apply_overrides, load_config
from .darkbright import (DarkBrightCoefficients, DarkBrightIntermediates,
                         DarkBrightState, coefficients, dark_bright_intermediates,
                         inverse_transform, response_coefficients,
                         steady_dark_bright, steady_dark_bright_verbatim, transform)
from .dynamics import IntegratorConfig, Trajectory, integrate, settle
from .errors import (BrimodeError, ConfigError, ConstraintError, IntegrationError,
                     ParameterError, SettleError, SingularPointError,
                     SingularSteadyStateError, UnstableSteadyStateWarning,
                     UnstableSystemError)
from .params import (C_VACUUM, HBAR, Cooperativities, CrystalParams, SystemParams,
                     brillouin_frequency, compute_g0, cooperativities, cooperativity,
                     coupling_from_cooperativity, validate)
from .steady import (COND_LIMIT, DriftSystem, ModeAmplitudes, StabilityReport,
                     assemble_drift, residual, solve_steady_numeric,
                     stability_report, steady_state_vector)
from .sweep import (FIGURE_IDS, OBSERVABLES, PARAMETERS, SweepResult, SweepSpec,
                    figure_dataset, run_sweep)

__version__ = "0.1.0"
