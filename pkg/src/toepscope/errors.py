"""Exception hierarchy.

Three top-level families map onto the CLI exit codes: InputError (1),
NumericalError (2), TheoryViolationError (3).
"""

from __future__ import annotations


class ToepscopeError(Exception):
    """Base class for everything raised on purpose by this package."""


class InputError(ToepscopeError):
    """Malformed or out-of-contract input."""


class ZeroPolynomialError(InputError):
    """An operation that needs a nonzero polynomial got the zero polynomial."""


class DegreeCapError(InputError):
    """Polynomial degree exceeds the supported cap (64)."""


class CoprimalityError(InputError):
    """Numerator and denominator share a root (within delta_coprime)."""


class InvalidElementError(InputError):
    """A function presented as a Hardy-space element has a pole in the closed disk."""


class RealnessError(InputError):
    """A real-symbol-only operation was called on a symbol that is not real on the circle."""


class UnboundedSymbolError(InputError):
    """A bounded-symbol-only operation was called on a symbol with circle poles."""


class OracleInapplicableError(InputError):
    """The requested oracle's preconditions exclude this input."""


class ConstantShiftError(InputError):
    """The shifted numerator R - lambda*S vanished identically (constant symbol at its own value)."""


class NumericalError(ToepscopeError):
    """A numerical procedure failed to reach its advertised accuracy."""


class NonConvergenceError(NumericalError):
    """An iterative scheme (root solve, adaptive FFT) failed to stabilize."""


class NoValidRotationError(NumericalError):
    """No rotation angle cleared the symbol's roots for the half-plane pullback."""


class PhaseJumpError(NumericalError):
    """Phase unwrapping saw a step over pi/2 even at the maximum sample resolution."""


class PoleTooCloseError(NumericalError):
    """A pole sits too close to the unit circle for the Laurent window to converge."""


class CancellationError(NumericalError):
    """Circle poles survived a product that should have cancelled them."""


class GenerationError(NumericalError):
    """Rejection sampling failed to produce a valid random symbol."""


class TheoryViolationError(ToepscopeError):
    """Computed quantities contradict a structural fact the theory guarantees."""
