"""Exception hierarchy shared by the numerical modules and the commands."""


class RatioLossError(Exception):
    """Base class for every error raised by rbloss"""
    pass


class InvalidParameterError(RatioLossError, ValueError):
    """A loss, link or builder parameter violates its admissible range"""
    pass


class DomainError(RatioLossError, ValueError):
    """An argument lies outside the domain of the function (r <= 0, y outside (a, b), ...)"""
    pass


class KinkError(RatioLossError, ValueError):
    """A central derivative was requested at a point where the function has a kink"""
    pass


class ContractError(RatioLossError, ValueError):
    """A user supplied function breaks a required identity, e.g. psi(0) != 0"""
    pass


class DivergentIntegralError(RatioLossError):
    """The integral construction does not converge near its lower limit"""
    pass


class NonMonotoneGeneratorError(RatioLossError, ValueError):
    """The generator g of the integral construction decreases somewhere on the grid"""
    pass


class HypothesisViolationError(RatioLossError):
    """A Lipschitz or risk bound was requested for a triple it does not apply to"""
    pass


class NonFiniteRiskError(RatioLossError):
    """The empirical risk is not finite at the initial model"""
    pass


class StepCollapseError(RatioLossError):
    """Backtracking shrank the step below its floor without sufficient decrease"""

    def __init__(self, message, model=None, risk=None):
        super().__init__(message)
        self.model = model
        self.risk = risk


class RaeUndefinedError(RatioLossError, ValueError):
    """Relative absolute error with a zero denominator (all outputs equal their mean)"""
    pass


class LossSpecError(RatioLossError, ValueError):
    """Malformed loss specification string"""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownLossError(LossSpecError):
    """The specification names a representing function that is not in the catalog"""
    pass
