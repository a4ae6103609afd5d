"""Mathematical constants, each available through two unrelated algorithms.

:func:`constants` returns the primary value of each (``pi_agm``,
``catalan_alternating``, ``glaisher_zeta``, ``apery_binomial``); the
other function of each pair is the cross-check.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from ..mpcore import PrecisionContext, sum_series
from .gamma import polygamma
from .zeta import hurwitz_zeta, hurwitz_zeta_sderiv


@dataclass(frozen=True)
class Constants:
    pi: object
    catalan: object
    glaisher: object
    apery: object


def pi_agm(ctx: PrecisionContext):
    """Gauss-Legendre arithmetic-geometric mean iteration."""
    mp = ctx.mp
    a, b, t, p = mp.one, 1 / mp.sqrt(2), mp.mpf(0.25), mp.one
    while abs(a - b) > ctx.working_eps:
        a, b, t, p = (a + b) / 2, mp.sqrt(a * b), t - p * ((a - b) / 2) ** 2, 2 * p
    return (a + b) ** 2 / (4 * t)


def _arctan_recip(x: int, ctx: PrecisionContext):
    mp = ctx.mp
    return sum_series(
        lambda k: mp.mpf((-1) ** k) / ((2 * k + 1) * mp.mpf(x) ** (2 * k + 1)), ctx
    ).unwrap("arctan series")


def pi_machin(ctx: PrecisionContext):
    """``16 arctan(1/5) - 4 arctan(1/239)``."""
    return 16 * _arctan_recip(5, ctx) - 4 * _arctan_recip(239, ctx)


def catalan_alternating(ctx: PrecisionContext):
    """Accelerated ``sum (-1)^n / (2n+1)^2``."""
    mp = ctx.mp
    return sum_series(
        lambda n: mp.mpf((-1) ** n) / (2 * n + 1) ** 2, ctx, "alternating"
    ).unwrap("Catalan series")


def catalan_ramanujan(ctx: PrecisionContext):
    """``pi/8 log(2 + sqrt 3) + 3/8 sum (n!)^2 / ((2n)! (2n+1)^2)``."""
    mp = ctx.mp
    state = {"r": mp.one}

    def term(n):
        if n:
            state["r"] = state["r"] * n / (2 * (2 * n - 1))
        return state["r"] / (2 * n + 1) ** 2

    tail = sum_series(term, ctx).unwrap("Catalan central-binomial series")
    return pi_machin(ctx) / 8 * mp.log(2 + mp.sqrt(3)) + 3 * tail / 8


def apery_zeta(ctx: PrecisionContext):
    """``zeta(3)`` by Euler-Maclaurin."""
    return hurwitz_zeta(3, 1, ctx)


def apery_binomial(ctx: PrecisionContext):
    """``5/2 sum_{n>=1} (-1)^(n+1) / (n^3 binom(2n, n))``."""
    mp = ctx.mp
    state = {"c": mp.mpf(2)}

    def term(k):
        n = k + 1
        if k:
            state["c"] = state["c"] * 2 * (2 * n - 1) / n
        return mp.mpf((-1) ** k) / (mp.mpf(n) ** 3 * state["c"])

    return 5 * sum_series(term, ctx).unwrap("Apery binomial series") / 2


def glaisher_zeta(ctx: PrecisionContext):
    """``exp(1/12 - zeta'(-1))``."""
    mp = ctx.mp
    return mp.exp(mp.one / 12 - hurwitz_zeta_sderiv(-1, 1, ctx))


def glaisher_eta(ctx: PrecisionContext):
    """Through ``zeta'(2)``: ``log A = (gamma + log 2 pi) / 12 - zeta'(2) / (2 pi^2)``.

    ``zeta'(2)`` comes from the accelerated alternating series
    ``eta'(2) = -sum (-1)^(n-1) log(n) / n^2`` and ``zeta(2) = pi^2 / 6``;
    Euler's constant from the digamma asymptotic expansion.
    """
    mp = ctx.mp
    pi = pi_agm(ctx)
    # eta'(2) = sum_{n>=2} (-1)^n log(n) / n^2
    eta_d = sum_series(
        lambda k: (-1) ** k * mp.log(k + 2) / mp.mpf(k + 2) ** 2, ctx, "alternating"
    ).unwrap("eta' series")
    zeta_d = 2 * eta_d - mp.log(2) * pi**2 / 6
    euler_gamma = -polygamma(0, 1, ctx)
    log_a = (euler_gamma + mp.log(2 * pi)) / 12 - zeta_d / (2 * pi**2)
    return mp.exp(log_a)


@functools.lru_cache(maxsize=32)
def constants(ctx: PrecisionContext) -> Constants:
    """Primary values of pi, Catalan's C, Glaisher's A and zeta(3)."""
    return Constants(
        pi=pi_agm(ctx),
        catalan=catalan_alternating(ctx),
        glaisher=glaisher_zeta(ctx),
        apery=apery_binomial(ctx),
    )
