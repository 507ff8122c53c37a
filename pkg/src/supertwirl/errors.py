"""Exception types raised across the package."""


class SupertwirlError(Exception):
    pass


class DimensionError(SupertwirlError, ValueError):
    """Operand shapes or dimension profiles do not agree."""


class ParameterError(SupertwirlError, ValueError):
    """A numeric parameter lies outside its valid range."""


class NumericalError(SupertwirlError, ArithmeticError):
    """A quantity expected to be real or finite is not, within tolerance."""


class InvalidChannelError(SupertwirlError, ValueError):
    """Kraus operators do not describe a CPTP map."""


class GroupClosureError(SupertwirlError, RuntimeError):
    """Closure of a generating set exceeded the safety bound."""


class DegenerateSpamError(SupertwirlError, ArithmeticError):
    """State preparation and measurement cannot distinguish |0> from |1>.

    The ratio estimator for the depolarizing parameter has a vanishing
    denominator in this case.
    """
