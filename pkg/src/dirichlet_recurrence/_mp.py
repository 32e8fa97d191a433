from functools import lru_cache

import mpmath


@lru_cache(maxsize=None)
def context(precision):
    """A private mpmath context fixed at ``precision`` significand bits.

    Contexts are never mutated after creation, so sharing them across
    threads is safe.
    """
    if precision < 2:
        raise ValueError("precision must be at least 2 bits")
    ctx = mpmath.MPContext()
    ctx.prec = int(precision)
    return ctx


def to_mpf(ctx, x):
    # floats are read through their shortest repr so 0.6 means 6/10
    if isinstance(x, float):
        return ctx.mpf(repr(x))
    return ctx.mpf(x)


def decimal_digits(precision):
    """Significant digits needed to round-trip a ``precision``-bit value."""
    import math
    return math.ceil(precision * math.log10(2)) + 2


def to_decimal(ctx, x, precision):
    return mpmath.libmp.to_str(ctx.mpf(x)._mpf_, decimal_digits(precision))
