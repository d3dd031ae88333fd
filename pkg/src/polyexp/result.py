"""Shared result container and exception hierarchy."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EvalResult:
    """Numeric value with an absolute-error estimate and bookkeeping.

    `work` counts series terms or quadrature nodes, whichever the producing
    route consumed. `method` is the route tag; the core evaluation routes
    use {series, closed_form, incgamma, ein, recursion, hankel,
    taylor_shift, asymptotic}, the transform layer uses quadrature tags.
    """

    value: complex
    abs_err_estimate: float
    work: int
    method: str

    def __post_init__(self):
        if self.abs_err_estimate < 0:
            raise ValueError("abs_err_estimate must be >= 0")
        if self.work < 0:
            raise ValueError("work must be >= 0")


class PolyexpError(Exception):
    """Base class for every error this package raises deliberately."""


class DomainError(PolyexpError, ValueError):
    """Arguments outside an operation's documented domain."""


class PoleError(DomainError):
    """Evaluation exactly at a pole."""


class ConvergenceError(PolyexpError):
    """A series or iteration failed to reach the requested tolerance."""


class QuadratureError(PolyexpError):
    """Adaptive quadrature exhausted its refinement budget."""


class ContourResolutionError(PolyexpError):
    """Hankel contour pieces failed their internal consistency check."""


class ConditioningError(PolyexpError):
    """A result would be dominated by cancellation or a near-degenerate system."""


class UnsupportedError(PolyexpError):
    """A documented, deliberate limitation was hit."""


class ParseError(PolyexpError, ValueError):
    """Syntax error in an input grammar; carries the byte offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position
