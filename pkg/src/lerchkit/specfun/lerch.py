"""Hurwitz-Lerch transcendent ``Phi(z, s, v) = sum_{n>=0} z^n (v + n)^-s``.

Several evaluation routes are available; :func:`lerch_phi` picks one from
the arguments, or uses the one requested so that routes can be compared
against each other.

=======================  ==================================================
route                    applies to
=======================  ==================================================
``series-direct``        ``|z| <= 0.98`` (and ``z = 0``)
``series-accelerated``   ``|z| = 1``, ``z != 1``, ``Re s > 0``
``neg-int-closed-form``  ``s = 0, -1, -2, ...`` and ``z != 1``
``zeta-reduction``       ``z = 1`` or ``z = -1``
``quadrature``           ``|z| <= 1``, ``z != 1``, ``Re s > 0``, ``Re v > 0``
=======================  ==================================================
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ..mpcore import (
    ConvergenceError,
    DomainError,
    PrecisionContext,
    fd_derivative,
    sum_series,
)
from .gamma import gamma, polygamma
from .quadrature import exp_sinh
from .zeta import hurwitz_zeta, hurwitz_zeta_sderiv

DIRECT_RADIUS = 0.98


class EvalRoute(str, enum.Enum):
    SERIES_DIRECT = "series-direct"
    SERIES_ACCELERATED = "series-accelerated"
    NEG_INT_CLOSED_FORM = "neg-int-closed-form"
    ZETA_REDUCTION = "zeta-reduction"
    QUADRATURE = "quadrature"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class LerchArgs:
    z: object
    s: object
    v: object

    def converted(self, ctx: PrecisionContext) -> tuple:
        mp = ctx.mp
        z, s, v = (mp.convert(x) for x in (self.z, self.s, self.v))
        if mp.im(v) == 0 and mp.re(v) <= 0 and mp.isint(mp.re(v)):
            raise DomainError(f"v must not be a non-positive integer, got {mp.nstr(v, 10)}")
        return z, s, v


def _neg_int_order(mp, s) -> int | None:
    if mp.im(s) == 0 and mp.re(s) <= 0 and mp.isint(mp.re(s)):
        return int(-mp.re(s))
    return None


def _on_unit_circle(mp, z, ctx: PrecisionContext) -> bool:
    return abs(abs(z) - 1) <= mp.mpf(10) ** (-(ctx.working_digits // 2))


def _is_minus_one(mp, z) -> bool:
    return z == -1


def select_route(z, s, v, ctx: PrecisionContext) -> EvalRoute:
    """The route :func:`lerch_phi` uses when none is requested."""
    mp = ctx.mp
    if z == 0:
        return EvalRoute.SERIES_DIRECT
    if z == 1 or _is_minus_one(mp, z):
        if z == 1 or _neg_int_order(mp, s) is None:
            return EvalRoute.ZETA_REDUCTION
    if _neg_int_order(mp, s) is not None:
        return EvalRoute.NEG_INT_CLOSED_FORM
    if abs(z) <= DIRECT_RADIUS:
        return EvalRoute.SERIES_DIRECT
    if _on_unit_circle(mp, z, ctx):
        if mp.re(s) > 0:
            return EvalRoute.SERIES_ACCELERATED
        raise DomainError("on |z| = 1 the series needs Re s > 0")
    if abs(z) < 1:
        if mp.re(s) > 0 and mp.re(v) > 0:
            return EvalRoute.QUADRATURE
        return EvalRoute.SERIES_DIRECT
    raise DomainError("Phi(z, s, v) is only provided for |z| <= 1")


def _series_direct(z, s, v, ctx: PrecisionContext):
    mp = ctx.mp
    if z == 0:
        return v ** (-s)
    if abs(z) >= 1:
        raise DomainError("series-direct needs |z| < 1")
    state = {"zn": mp.one}

    def term(n):
        if n:
            state["zn"] *= z
        return state["zn"] * (v + n) ** (-s)

    return sum_series(term, ctx).unwrap("Lerch series")


def _neg_int_poly(order: int, z, v, mp):
    # Phi(z, -j, v) = P_j(z) / (1 - z)^(j+1), with
    # P_{j+1} = (1 - z)(z P_j' + v P_j) + (j + 1) z P_j, P_0 = 1.
    p = [mp.one]
    for j in range(order):
        zdp = [mp.zero] + [k * p[k] for k in range(1, len(p))]  # z * P'
        inner = [zdp[k] + v * p[k] for k in range(len(p))]
        nxt = [mp.zero] * (len(p) + 1)
        for k, c in enumerate(inner):
            nxt[k] += c
            nxt[k + 1] -= c
        for k, c in enumerate(p):
            nxt[k + 1] += (j + 1) * c
        p = nxt
    acc = mp.zero
    for c in reversed(p):
        acc = acc * z + c
    return acc / (1 - z) ** (order + 1)


def lerch_phi_neg_int(z, order: int, v, ctx: PrecisionContext):
    """``Phi(z, -order, v)`` as a rational function of ``z`` (any ``z != 1``)."""
    mp = ctx.mp
    if order < 0:
        raise ValueError("order must be non-negative")
    z = mp.convert(z)
    if z == 1:
        raise DomainError("Phi(1, -k, v) is a zeta value; use the zeta-reduction route")
    return _neg_int_poly(order, z, mp.convert(v), mp)


def _zeta_reduction(z, s, v, ctx: PrecisionContext):
    mp = ctx.mp
    if z == 1:
        return hurwitz_zeta(s, v, ctx)
    if not _is_minus_one(mp, z):
        raise DomainError("zeta-reduction needs z = 1 or z = -1")
    if s == 1:
        return (polygamma(0, (v + 1) / 2, ctx) - polygamma(0, v / 2, ctx)) / 2
    return 2 ** (-s) * (hurwitz_zeta(s, v / 2, ctx) - hurwitz_zeta(s, (v + 1) / 2, ctx))


def _taylor_tail(z, s, v, ctx: PrecisionContext):
    """Unit-circle ``z != 1``: direct head plus a Taylor expansion of the tail.

    With ``w = v + N``, ``(w + n)^-s = sum_j binom(-s, j) w^(-s-j) n^j`` and
    ``sum_n n^j z^n = Phi(z, -j, 0)``, so the tail becomes an asymptotic
    series in ``1/w`` whose terms shrink while ``j < |arg z| |w|``.
    """
    mp = ctx.mp
    theta = abs(mp.arg(z))
    theta = float(min(theta, 2 * mp.pi - theta))
    if theta == 0:
        raise DomainError("Taylor-tail route needs z != 1")
    target = ctx.working_digits * math.log(10) + 10
    n = max(0, math.ceil(target / theta + abs(complex(s)) - float(mp.re(v))))
    if n > ctx.max_terms:
        raise ConvergenceError(f"z too close to 1 for the Taylor-tail route (N={n})")
    head = mp.zero
    zn = mp.one
    for k in range(n):
        head += zn * (v + k) ** (-s)
        zn *= z
    w = v + n
    w_s = w ** (-s)
    tol = ctx.working_eps
    # Coefficients of P_j for Phi(z, -j, 0), advanced one step per j.
    p = [mp.one]
    tail = mp.zero
    binom = mp.one
    wpow = w_s
    prev = prev2 = None
    quiet = 0
    one_minus_z = 1 - z
    denom = one_minus_z
    for j in range(0, 10 * int(target) + 50):
        lj = mp.zero
        for c in reversed(p):
            lj = lj * z + c
        term = binom * wpow * lj / denom
        tail += term
        size = abs(term)
        # Accuracy is judged against the whole value, not the (small) tail.
        scale = max(abs(head + zn * tail), abs(tail))
        if size <= tol * scale:
            quiet += 1
            if quiet >= 2:
                return head + zn * tail
        else:
            quiet = 0
        # Near z = -1 every other coefficient almost vanishes, so divergence
        # is only declared when the terms grow over two steps.
        if prev2 is not None and size > prev > prev2 and size > tol * scale and j > 3:
            break
        prev, prev2 = size, prev
        zdp = [mp.zero] + [k * p[k] for k in range(1, len(p))]
        nxt = [mp.zero] * (len(p) + 1)
        for k, c in enumerate(zdp):
            nxt[k] += c
            nxt[k + 1] -= c
        for k, c in enumerate(p):
            nxt[k + 1] += (j + 1) * c
        p = nxt
        denom *= one_minus_z
        binom *= (-s - j) / (j + 1)
        wpow /= w
    raise ConvergenceError("Taylor-tail expansion did not reach the requested accuracy")


def _series_accelerated(z, s, v, ctx: PrecisionContext):
    mp = ctx.mp
    if not _on_unit_circle(mp, z, ctx) or z == 1:
        raise DomainError("series-accelerated needs |z| = 1 and z != 1")
    if mp.re(s) <= 0:
        raise DomainError("series-accelerated needs Re s > 0")
    if _is_minus_one(mp, z) and mp.re(v) > 0:
        result = sum_series(lambda n: (-1) ** n * (v + n) ** (-s), ctx, "alternating")
        return result.unwrap("alternating Lerch series")
    return _taylor_tail(z, s, v, ctx)


def _quadrature(z, s, v, ctx: PrecisionContext):
    mp = ctx.mp
    if mp.re(s) <= 0 or mp.re(v) <= 0:
        raise DomainError("quadrature route needs Re s > 0 and Re v > 0")
    if abs(z) > 1 + mp.mpf(10) ** (-(ctx.working_digits // 2)) or z == 1:
        raise DomainError("quadrature route needs |z| <= 1 and z != 1")
    if abs(1 - z) < mp.mpf(10) ** (-(ctx.working_digits // 4)):
        raise ConvergenceError("z too close to 1 for quadrature")

    def integrand(log_t):
        t = mp.exp(log_t)
        # t^(s-1) e^(-v t) / (1 - z e^-t), times t for the substitution.
        return mp.exp(s * log_t - v * t) / (1 - z * mp.exp(-t))

    return exp_sinh(integrand, ctx) / gamma(s, ctx)


_ROUTES = {
    EvalRoute.SERIES_DIRECT: _series_direct,
    EvalRoute.SERIES_ACCELERATED: _series_accelerated,
    EvalRoute.ZETA_REDUCTION: _zeta_reduction,
    EvalRoute.QUADRATURE: _quadrature,
}


def lerch_phi(args: LerchArgs, ctx: PrecisionContext, route: EvalRoute | str | None = None):
    """Evaluate ``Phi(z, s, v)``; returns ``(value, route_used)``.

    Raises :class:`DomainError` for ``z = 1, s = 1``, for ``v`` a
    non-positive integer, for ``|z| > 1`` (outside the closed form at
    negative integer ``s``) and when a requested route does not apply.
    """
    mp = ctx.mp
    z, s, v = args.converted(ctx)
    if z == 1 and s == 1:
        raise DomainError("Phi(1, 1, v) diverges")
    chosen = select_route(z, s, v, ctx) if route is None else EvalRoute(route)
    if chosen is EvalRoute.NEG_INT_CLOSED_FORM:
        order = _neg_int_order(mp, s)
        if order is None:
            raise DomainError("neg-int-closed-form needs s = 0, -1, -2, ...")
        return lerch_phi_neg_int(z, order, v, ctx), chosen
    return _ROUTES[chosen](z, s, v, ctx), chosen


def phi(z, s, v, ctx: PrecisionContext):
    """Shorthand for ``lerch_phi(LerchArgs(z, s, v), ctx)[0]``."""
    return lerch_phi(LerchArgs(z, s, v), ctx)[0]


def _circle_derivative(f, at, ctx: PrecisionContext, radius: float = 0.25):
    """``f'(at)`` by the trapezoid rule on ``|t - at| = radius`` (``f`` analytic)."""
    mp = ctx.mp
    nodes = 2 * ctx.working_digits
    r = mp.mpf(radius)
    acc = mp.zero
    for j in range(nodes):
        e = mp.expjpi(mp.mpf(2 * j) / nodes)
        acc += f(at + r * e) / e
    return acc / (nodes * r)


def sderiv_method(args: LerchArgs, ctx: PrecisionContext) -> str:
    """Name of the method :func:`lerch_phi_sderiv` uses for these arguments."""
    mp = ctx.mp
    z, s, v = args.converted(ctx)
    if z == 0:
        return "closed-form"
    if z == 1:
        return "zeta-reduction"
    if _is_minus_one(mp, z):
        return "circle-trapezoid" if s == 1 else "zeta-reduction"
    if _on_unit_circle(mp, z, ctx) and mp.re(s) <= 0:
        raise DomainError("Phi on |z| = 1 with Re s <= 0 is outside the evaluation scope")
    if abs(z) <= DIRECT_RADIUS:
        return "series-direct"
    return "finite-difference"


def lerch_phi_sderiv(args: LerchArgs, ctx: PrecisionContext):
    """``d/ds Phi(z, s, v)``."""
    mp = ctx.mp
    method = sderiv_method(args, ctx)
    z, s, v = args.converted(ctx)
    if method == "closed-form":
        return -mp.log(v) * v ** (-s)
    if method == "zeta-reduction" and z == 1:
        return hurwitz_zeta_sderiv(s, v, ctx)
    if method == "circle-trapezoid":
        # Phi(-1, s, v) is entire in s, but the zeta reduction has
        # cancelling poles at s = 1; differentiate on a circle instead.
        return _circle_derivative(lambda t: phi(z, t, v, ctx), s, ctx)
    if method == "zeta-reduction":
        a = hurwitz_zeta(s, v / 2, ctx) - hurwitz_zeta(s, (v + 1) / 2, ctx)
        da = hurwitz_zeta_sderiv(s, v / 2, ctx) - hurwitz_zeta_sderiv(s, (v + 1) / 2, ctx)
        return 2 ** (-s) * (da - mp.log(2) * a)
    if method == "series-direct":
        state = {"zn": mp.one}

        def term(n):
            if n:
                state["zn"] *= z
            return -mp.log(v + n) * state["zn"] * (v + n) ** (-s)

        return sum_series(term, ctx).unwrap("Lerch derivative series")
    return fd_derivative(lambda t: phi(z, t, v, ctx), s, ctx)
