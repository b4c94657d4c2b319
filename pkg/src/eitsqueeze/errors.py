"""Exception hierarchy.

Configuration problems derive from :class:`ConfigError`, failures of the
physical model at a particular operating point derive from
:class:`ComputationError`. The CLI maps the two families to distinct exit
codes.
"""


class EitSqueezeError(Exception):
    pass


class ConfigError(EitSqueezeError):
    pass


class InvalidParam(ConfigError):
    """One or more parameters violate their bounds.

    ``violations`` holds every violation found, not only the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ParseError(ConfigError):
    def __init__(self, line, message):
        self.line = line
        where = f"line {line}" if line is not None else "override"
        super().__init__(f"{where}: {message}")


class ComputationError(EitSqueezeError):
    pass


class AbsorptionDominates(ComputationError):
    """|chi| too large for the weak-susceptibility expansion of the wave vector."""


class OutsideValidity(ComputationError):
    """Detuning outside the region where the +/- sideband parity relations hold."""


class DegenerateDenominator(ComputationError):
    pass


class DerivativeMismatch(ComputationError):
    pass


class LevelUnreachable(ComputationError):
    pass


class NoSqueezing(ComputationError):
    pass


class NeverSatisfied(ComputationError):
    pass


class ConjugateMismatch(ComputationError):
    pass


class NonMonotone(ComputationError):
    pass
