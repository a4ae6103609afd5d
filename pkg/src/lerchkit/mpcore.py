"""Extended-precision arithmetic core.

Every numerical routine in the package takes a :class:`PrecisionContext`.
The context owns a private mpmath ``MPContext`` fixed at
``digits + guard_digits`` decimal digits, so evaluations never touch the
global ``mpmath.mp`` state and contexts can be shared between threads.

Scalars are mpmath ``mpf``/``mpc`` values belonging to ``ctx.mp``; the
alias :data:`ComplexValue` names that union.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Union

from mpmath.ctx_mp import MPContext

__all__ = [
    "ComplexValue",
    "ConvergenceError",
    "DomainError",
    "PrecisionContext",
    "SeriesResult",
    "c_log",
    "c_pow",
    "compensated_sum",
    "ctx_new",
    "fd_derivative",
    "is_finite",
    "sum_series",
]

ComplexValue = Union["mpmath.mpc", "mpmath.mpf"]  # noqa: F821

Number = Union[int, float, complex, str, ComplexValue]


class DomainError(ValueError):
    """Argument outside the domain of a function (pole, branch point, ...)."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature failed to reach the requested accuracy."""

    def __init__(self, message: str, result: "SeriesResult | None" = None):
        super().__init__(message)
        self.result = result


_CONTEXTS: dict[int, MPContext] = {}
_CONTEXTS_LOCK = threading.Lock()


def _mp_for(dps: int) -> MPContext:
    # One MPContext per precision; its dps is never changed after creation.
    with _CONTEXTS_LOCK:
        mp = _CONTEXTS.get(dps)
        if mp is None:
            mp = MPContext()
            mp.dps = dps
            _CONTEXTS[dps] = mp
        return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Working-precision configuration.

    ``digits`` is the accuracy target; arithmetic runs at
    ``digits + guard_digits`` to absorb cancellation.
    """

    digits: int = 50
    guard_digits: int = 10
    max_terms: int = 100_000

    def __post_init__(self) -> None:
        if self.digits < 15:
            raise ValueError(f"digits must be >= 15, got {self.digits}")
        if self.guard_digits < 5:
            raise ValueError(f"guard_digits must be >= 5, got {self.guard_digits}")
        if self.max_terms < 100:
            raise ValueError(f"max_terms must be >= 100, got {self.max_terms}")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard_digits

    @property
    def mp(self) -> MPContext:
        return _mp_for(self.working_digits)

    @property
    def eps(self):
        """Target relative accuracy ``10**-digits``."""
        return self.mp.mpf(10) ** (-self.digits)

    @property
    def working_eps(self):
        return self.mp.mpf(10) ** (-self.working_digits)

    def escalated(self, extra: int = 20) -> "PrecisionContext":
        return replace(self, digits=self.digits + extra)

    def convert(self, x: Number):
        return self.mp.convert(x)


def ctx_new(digits: int = 50) -> PrecisionContext:
    return PrecisionContext(digits=digits)


def is_finite(z) -> bool:
    try:
        if hasattr(z, "imag"):
            return math.isfinite(float(abs(z.real))) and math.isfinite(float(abs(z.imag)))
        return math.isfinite(float(abs(z)))
    except OverflowError:
        return False


def c_log(z: Number, ctx: PrecisionContext):
    """Principal logarithm with ``Im`` in ``(-pi, pi]``.

    The negative real axis maps to ``Im = +pi``.
    """
    mp = ctx.mp
    z = mp.convert(z)
    if z == 0:
        raise DomainError("log(0) is undefined")
    return mp.mpc(mp.log(z))


def c_pow(z: Number, w: Number, ctx: PrecisionContext):
    """Principal power ``exp(w * log z)``; ``0**w = 0`` for ``Re(w) > 0``."""
    mp = ctx.mp
    z = mp.convert(z)
    w = mp.convert(w)
    if z == 0:
        if mp.re(w) > 0:
            return mp.zero
        raise DomainError(f"0**w requires Re(w) > 0, got w={mp.nstr(w, 8)}")
    return mp.power(z, w)


@dataclass(frozen=True)
class SeriesResult:
    value: ComplexValue
    terms_used: int
    converged: bool
    tail_bound: "mpmath.mpf"  # noqa: F821

    def unwrap(self, what: str = "series") -> ComplexValue:
        if not self.converged:
            raise ConvergenceError(
                f"{what} did not converge after {self.terms_used} terms", self
            )
        return self.value


def sum_series(
    term: Callable[[int], Number],
    ctx: PrecisionContext,
    mode: str = "direct",
    *,
    max_terms: int | None = None,
) -> SeriesResult:
    """Sum ``term(0) + term(1) + ...``.

    ``mode="direct"`` adds terms until ``|term_n|`` and the geometric tail
    estimate ``|term_n| r / (1 - r)`` both drop below
    ``10**-working_digits * |partial sum|`` on three consecutive terms.

    ``mode="alternating"`` treats the terms as ``(-1)**n a_n`` and applies
    the Cohen-Rodriguez Villegas-Zagier weights.  It is only sound when the
    ``a_n`` behave like moments of a positive measure, e.g. ``(v+n)**-s``.
    """
    if mode == "direct":
        return _sum_direct(term, ctx, max_terms or ctx.max_terms)
    if mode == "alternating":
        return _sum_alternating(term, ctx)
    raise ValueError(f"unknown summation mode {mode!r}")


def _sum_direct(term, ctx: PrecisionContext, max_terms: int) -> SeriesResult:
    mp = ctx.mp
    tol = ctx.working_eps
    total = mp.zero
    prev_abs = None
    quiet = 0
    tail = mp.inf
    for n in range(max_terms):
        t = mp.convert(term(n))
        total += t
        t_abs = abs(t)
        if prev_abs is None or prev_abs == 0:
            ratio = mp.zero if t_abs == 0 else mp.one
        else:
            ratio = t_abs / prev_abs
        tail = t_abs * ratio / (1 - ratio) if ratio < 1 else mp.inf
        threshold = tol * abs(total)
        if t_abs <= threshold and tail <= threshold:
            quiet += 1
            if quiet >= 3:
                return SeriesResult(total, n + 1, True, max(t_abs, tail))
        else:
            quiet = 0
        prev_abs = t_abs
    return SeriesResult(total, max_terms, False, tail)


def _cvz(a: list, n: int, mp):
    d = (3 + mp.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = -mp.one
    c = -d
    s = mp.zero
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + mp.mpf(0.5)) * (k + 1))
    return s / d


def _sum_alternating(term, ctx: PrecisionContext) -> SeriesResult:
    mp = ctx.mp
    # Error of the CVZ weights decays like 5.83**-n.
    n = int(math.ceil(1.31 * ctx.working_digits)) + 10
    extra = 12
    a = [mp.convert(term(k)) * (-1) ** k for k in range(n + extra)]
    coarse = _cvz(a, n, mp)
    fine = _cvz(a, n + extra, mp)
    diff = abs(fine - coarse)
    converged = diff <= ctx.eps * max(1, abs(fine)) and mp.isfinite(abs(fine))
    return SeriesResult(fine, n + extra, bool(converged), diff)


def fd_derivative(
    f: Callable[[ComplexValue], Number],
    at: Number,
    ctx: PrecisionContext,
) -> ComplexValue:
    """Central difference with one Richardson step, ``h = 10**(-digits/3)``."""
    mp = ctx.mp
    at = mp.convert(at)
    h = mp.mpf(10) ** (-mp.mpf(ctx.digits) / 3)

    def central(step):
        return (mp.convert(f(at + step)) - mp.convert(f(at - step))) / (2 * step)

    coarse = central(h)
    fine = central(h / 2)
    return (4 * fine - coarse) / 3


def compensated_sum(values: Iterable[Number], ctx: PrecisionContext) -> ComplexValue:
    """Neumaier summation, applied separately to real and imaginary parts."""
    mp = ctx.mp
    sums = [mp.zero, mp.zero]
    carries = [mp.zero, mp.zero]
    is_complex = False
    for v in values:
        v = mp.convert(v)
        if isinstance(v, mp.mpc):
            is_complex = True
        for i, part in enumerate((mp.re(v), mp.im(v))):
            s = sums[i]
            t = s + part
            if abs(s) >= abs(part):
                carries[i] += (s - t) + part
            else:
                carries[i] += (part - t) + s
            sums[i] = t
    re_part = sums[0] + carries[0]
    if not is_complex:
        return re_part
    return mp.mpc(re_part, sums[1] + carries[1])
