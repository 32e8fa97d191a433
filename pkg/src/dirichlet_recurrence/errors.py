"""Exception types raised by the numerical routines."""


class DirichletRecurrenceError(Exception):
    """Base class for all errors raised by this package."""


class QuadratureNonConvergence(DirichletRecurrenceError):
    def __init__(self, tol, error, panels):
        self.tol = tol
        self.error = error
        self.panels = panels
        super().__init__(
            f"quadrature error estimate {error:.3e} above tol {tol:.3e} "
            f"after {panels} panels"
        )


class NotPositiveDefinite(DirichletRecurrenceError):
    """A Cholesky pivot was not positive at the working precision.

    ``pivot`` is the 1-based index of the failing pivot, so the leading
    ``pivot - 1`` block factored fine.
    """

    def __init__(self, pivot, value, precision):
        self.pivot = pivot
        self.value = value
        self.precision = precision
        super().__init__(
            f"pivot {pivot} is {value} at {precision} bits; "
            f"try precision {2 * precision}"
        )


class SupportExceedsOrder(DirichletRecurrenceError):
    def __init__(self, index, order):
        self.index = index
        self.order = order
        super().__init__(f"sequence index {index} exceeds factor order {order}")


class PoleAtOne(DirichletRecurrenceError):
    pass


class EvaluationFailure(DirichletRecurrenceError):
    pass


class StabilizationFailure(DirichletRecurrenceError):
    def __init__(self, previous, last, order):
        self.previous = previous
        self.last = last
        self.order = order
        super().__init__(
            f"distance did not stabilize by N={order}: "
            f"D_(N/2)={previous!r}, D_N={last!r}"
        )


class ConfigError(DirichletRecurrenceError, ValueError):
    pass
