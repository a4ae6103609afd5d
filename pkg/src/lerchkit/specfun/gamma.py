"""Log-gamma, gamma and polygamma via Stirling series with recurrence shifts."""

from __future__ import annotations

import math

from ..mpcore import DomainError, PrecisionContext
from .bernoulli import bernoulli_even


def _is_nonpositive_integer(mp, z) -> bool:
    return mp.im(z) == 0 and mp.re(z) <= 0 and mp.isint(mp.re(z))


def _n_terms(ctx: PrecisionContext) -> int:
    return max(4, math.ceil(ctx.working_digits / 2))


def asymptotic_radius(ctx: PrecisionContext, offset: int = 0) -> float:
    """Smallest ``|w|`` at which ``M = working_digits / 2`` Bernoulli terms suffice.

    The first omitted term of the Stirling-type series is bounded by
    ``2 (2M + offset)! / ((2 pi)^(2M+2) |w|^(2M+1+offset))``.
    """
    m = _n_terms(ctx)
    k = 2 * m + 1 + offset
    log_num = math.log(2) + math.lgamma(k + 1) + ctx.working_digits * math.log(10)
    log_den = (2 * m + 2) * math.log(2 * math.pi)
    return math.exp((log_num - log_den) / k) + 1.0


def _shift(mp, z, radius: float) -> int:
    # Number of unit steps taking Re z past ``radius``.
    re = float(mp.re(z))
    return max(0, math.ceil(radius - re))


def log_gamma(z, ctx: PrecisionContext):
    """Principal-branch ``log Gamma(z)``.

    Equal to the analytic continuation of ``log Gamma`` from the positive
    real axis, with the branch cut along the negative real axis.  For real
    positive ``z`` the result is real.
    """
    mp = ctx.mp
    z = mp.convert(z)
    if _is_nonpositive_integer(mp, z):
        raise DomainError(f"Gamma has a pole at {mp.nstr(z, 10)}")
    n = _shift(mp, z, asymptotic_radius(ctx))
    w = z + n
    m = _n_terms(ctx)
    lw = mp.log(w)
    acc = (w - mp.mpf(0.5)) * lw - w + mp.log(2 * mp.pi) / 2
    w2 = w * w
    wpow = w
    for j in range(1, m + 1):
        b = bernoulli_even(j)
        acc += mp.mpf(b.numerator) / (b.denominator * (2 * j) * (2 * j - 1)) / wpow
        wpow *= w2
    if n:
        if mp.im(z) == 0 and mp.re(z) > 0:
            acc -= mp.log(mp.fprod(z + j for j in range(n)))
        else:
            acc -= mp.fsum(mp.log(z + j) for j in range(n))
    if mp.im(z) == 0 and mp.re(z) > 0:
        return mp.re(acc)
    return acc


def gamma(z, ctx: PrecisionContext):
    """``Gamma(z)``; real input gives a real result (of either sign)."""
    mp = ctx.mp
    z = mp.convert(z)
    if _is_nonpositive_integer(mp, z):
        raise DomainError(f"Gamma has a pole at {mp.nstr(z, 10)}")
    if mp.im(z) == 0:
        x = mp.re(z)
        if x > 0:
            return mp.exp(log_gamma(x, ctx))
        n = math.ceil(1 - float(x))
        return mp.exp(log_gamma(x + n, ctx)) / mp.fprod(x + j for j in range(n))
    return mp.exp(log_gamma(z, ctx))


def polygamma(m: int, z, ctx: PrecisionContext):
    """``psi^(m)(z)`` for ``0 <= m <= 4``."""
    if not 0 <= m <= 4:
        raise ValueError("polygamma order must be between 0 and 4")
    mp = ctx.mp
    z = mp.convert(z)
    if _is_nonpositive_integer(mp, z):
        raise DomainError(f"polygamma has a pole at {mp.nstr(z, 10)}")
    n = _shift(mp, z, asymptotic_radius(ctx, offset=m))
    w = z + n
    terms = _n_terms(ctx)
    if m == 0:
        acc = mp.log(w) - 1 / (2 * w)
        w2 = w * w
        wpow = w2
        for j in range(1, terms + 1):
            b = bernoulli_even(j)
            acc -= mp.mpf(b.numerator) / (b.denominator * 2 * j) / wpow
            wpow *= w2
    else:
        fm1 = math.factorial(m - 1)
        acc = fm1 / w**m + math.factorial(m) / (2 * w ** (m + 1))
        w2 = w * w
        wpow = w ** (m + 2)
        for j in range(1, terms + 1):
            b = bernoulli_even(j)
            coef = b * math.factorial(2 * j + m - 1) / math.factorial(2 * j)
            acc += mp.mpf(coef.numerator) / coef.denominator / wpow
            wpow *= w2
        if m % 2 == 0:
            acc = -acc
    if n:
        sign = -1 if m % 2 else 1
        # psi^(m)(z) = psi^(m)(z + n) - (-1)^m m! sum_{j<n} (z + j)^(-m-1)
        acc -= sign * math.factorial(m) * mp.fsum((z + j) ** (-m - 1) for j in range(n))
    return acc
