"""Hurwitz zeta and its s-derivative by Euler-Maclaurin summation."""

from __future__ import annotations

import math

from ..mpcore import ConvergenceError, DomainError, PrecisionContext
from .bernoulli import bernoulli_even


def _check_args(mp, s, v) -> None:
    if s == 1:
        raise DomainError("Hurwitz zeta has a pole at s = 1")
    if mp.im(v) == 0 and mp.re(v) <= 0 and mp.isint(mp.re(v)):
        raise DomainError(f"v must not be a non-positive integer, got {mp.nstr(v, 10)}")


def _n_bernoulli(ctx: PrecisionContext) -> int:
    return max(4, math.ceil(ctx.working_digits / 2))


def _radius(s, m: int, ctx: PrecisionContext) -> float:
    # First omitted term relative to (v+N)^-s is about
    # 2 |(s)_{2m+1}| / ((2 pi)^(2m+2) r^(2m+1)).
    sc = complex(s)
    log_poch = sum(math.log(max(abs(sc + i), 1e-300)) for i in range(2 * m + 1))
    k = 2 * m + 1
    log_r = (
        math.log(2) + log_poch + ctx.working_digits * math.log(10)
        - (2 * m + 2) * math.log(2 * math.pi)
    ) / k
    heuristic = ctx.working_digits * math.log(10) / (2 * math.pi)
    return max(math.exp(log_r), heuristic, m / math.pi) + abs(sc) + 2.0


def _shift_for(mp, v, radius: float) -> int:
    n = max(0, math.ceil(radius - float(mp.re(v))))
    while abs(complex(v) + n) < radius:
        n += 1
    return n


def _em(s, v, ctx: PrecisionContext, n: int, derivative: bool):
    """Euler-Maclaurin value (or s-derivative) with shift ``n``.

    Returns ``(value, tail_estimate, scale)`` where ``tail_estimate`` is the
    magnitude of the first omitted correction term.
    """
    mp = ctx.mp
    m = _n_bernoulli(ctx)
    w = v + n
    lw = mp.log(w)
    w_s = mp.exp(-s * lw)  # (v+N)^-s
    if derivative:
        head = mp.fsum(-mp.log(v + j) * (v + j) ** (-s) for j in range(n))
        w1 = w * w_s
        acc = head - lw * w1 / (s - 1) - w1 / (s - 1) ** 2 - lw * w_s / 2
    else:
        head = mp.fsum((v + j) ** (-s) for j in range(n))
        acc = head + w * w_s / (s - 1) + w_s / 2
    # poch = (s)_{2j-1}, dpoch its s-derivative; wpow = w^(-s-2j+1).
    poch, dpoch = s, mp.one
    wpow = w_s / w
    w2 = w * w
    tail = mp.zero
    for j in range(1, m + 2):
        b = bernoulli_even(j)
        c = mp.mpf(b.numerator) / (b.denominator * mp.factorial(2 * j))
        if derivative:
            term = c * wpow * (dpoch - lw * poch)
        else:
            term = c * poch * wpow
        if j <= m:
            acc += term
        else:
            tail = abs(term)
        # advance (s)_{2j-1} -> (s)_{2j+1}
        for i in (2 * j - 1, 2 * j):
            dpoch = dpoch * (s + i) + poch
            poch = poch * (s + i)
        wpow /= w2
    return acc, tail, abs(w_s)


def _evaluate(s, v, ctx: PrecisionContext, derivative: bool):
    mp = ctx.mp
    s = mp.convert(s)
    v = mp.convert(v)
    _check_args(mp, s, v)
    n = _shift_for(mp, v, _radius(s, _n_bernoulli(ctx), ctx))
    for _ in range(2):
        value, tail, scale = _em(s, v, ctx, n, derivative)
        if tail <= ctx.working_eps * max(abs(value), scale):
            return value
        n = 2 * n + 10
    raise ConvergenceError(
        f"Euler-Maclaurin tail bound not met for s={mp.nstr(s, 8)}, v={mp.nstr(v, 8)}"
    )


def hurwitz_zeta(s, v, ctx: PrecisionContext):
    """``zeta(s, v) = sum_{n >= 0} (v + n)^-s`` continued to all ``s != 1``."""
    return _evaluate(s, v, ctx, derivative=False)


def hurwitz_zeta_sderiv(s, v, ctx: PrecisionContext):
    """``d/ds zeta(s, v)``."""
    return _evaluate(s, v, ctx, derivative=True)
