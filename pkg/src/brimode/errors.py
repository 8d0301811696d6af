"""Exception hierarchy.

Configuration-type failures (bad input, bad spec) are kept distinct from
numerical/physical failures (singular system, instability) so the CLI can
map them to different exit statuses.
"""


class BrimodeError(Exception):
    """Base class for all package errors."""


class ParameterError(BrimodeError, ValueError):
    """A parameter set violates one or more invariants.

    ``violations`` lists every broken invariant; nothing is clamped.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ConfigError(BrimodeError, ValueError):
    """Malformed configuration file or unknown key/identifier."""


class SingularSteadyStateError(BrimodeError, ArithmeticError):
    """The linear response matrix has no unique inverse (no unique steady state)."""


class SingularPointError(SingularSteadyStateError):
    """A closed-form denominator vanishes (parametric-instability threshold)."""


class ConstraintError(BrimodeError):
    """A physical precondition of an operation is not met."""


class UnstableSystemError(ConstraintError):
    """Operation requires a dynamically stable system (margin < 0)."""


class IntegrationError(BrimodeError, ArithmeticError):
    """Time integration failed (e.g. step-size underflow)."""


class SettleError(BrimodeError, ArithmeticError):
    """Relaxation to steady state did not converge within the horizon."""


class UnstableSteadyStateWarning(UserWarning):
    """Steady state computed for a linearly unstable system; physically unreachable."""
