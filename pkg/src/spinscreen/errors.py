"""Exception types shared across the package."""


class SpinScreenError(Exception):
    """Base class for all spinscreen errors."""


class EmptyScreen(SpinScreenError):
    """Screen ranges are empty or parity-incompatible."""


class ParityError(SpinScreenError):
    """Angular momenta violate an integer/half-integer parity constraint."""


class OutOfRange(SpinScreenError):
    """A lattice point lies outside the screen."""


class PatternError(SpinScreenError):
    """Arguments do not match a supported closed-form pattern."""


class ConvergenceFailure(SpinScreenError):
    """The eigensolver failed to converge."""


class MatchFailure(SpinScreenError):
    """Forward and backward recursion branches could not be matched."""


class SeedMismatch(SpinScreenError):
    """Seed rows for the 2D recursion fail their orthonormality check."""


class ZeroPivot(SpinScreenError):
    """The recursion coefficient that should be solved for vanishes."""


class NegativeRadicand(SpinScreenError):
    """Triangle inequality violated: area radicand is negative."""


class DegenerateFace(SpinScreenError):
    """A face area in a denominator is zero."""


class OutsideDomain(SpinScreenError):
    """Point lies outside the geometric (classical) domain."""


class NoClassicalWindow(SpinScreenError):
    """A row has no classically allowed lattice points."""


class CausticProximityWarning(UserWarning):
    """Semiclassical estimate requested close to a caustic; accuracy degrades."""
