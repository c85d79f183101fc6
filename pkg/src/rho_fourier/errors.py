"""Exception hierarchy.  Every error raised on purpose derives from RhoFourierError."""


class RhoFourierError(Exception):
    pass


class ZeroDenominator(RhoFourierError, ZeroDivisionError):
    pass


class MixedPoleDirections(RhoFourierError):
    pass


class ArityMismatch(RhoFourierError, ValueError):
    pass


class ZeroScalar(RhoFourierError, ValueError):
    pass


class PoleAtHalf(RhoFourierError):
    pass


class NumericPole(RhoFourierError):
    pass


class ShapeMismatch(RhoFourierError, ValueError):
    pass


class PoleEvaluation(RhoFourierError):
    pass


class NonDominant(RhoFourierError, ValueError):
    pass


class EnumerationBudgetExceeded(RhoFourierError):
    pass


class NotWeylInvariant(RhoFourierError, ValueError):
    pass


class DegenerateSatake(RhoFourierError):
    pass


class UnboundedSupport(RhoFourierError):
    pass


class QuadratureBudget(RhoFourierError):
    pass


class NotStronglyConvex(RhoFourierError):
    pass


class TruncationTooSmall(RhoFourierError):
    pass


class WindowTooSmall(RhoFourierError):
    pass


class NotAsymptoticSchwartz(RhoFourierError):
    pass
