"""Evaluation namespace handed to identity formulas.

An :class:`Env` binds the special functions to one precision context,
guards trigonometric and gamma poles, and records which Lerch routes were
used so that check results can report them.
"""

from __future__ import annotations

from collections import Counter

from ..mpcore import DomainError, PrecisionContext, c_pow, compensated_sum
from ..specfun import (
    LerchArgs,
    constants,
    gamma,
    lerch_phi,
    lerch_phi_sderiv,
    polygamma,
)

# Parameters are sampled as doubles, so a denominator this small cannot be
# told apart from an exact pole.
POLE_THRESHOLD = 1e-10


class Env:
    def __init__(self, ctx: PrecisionContext, *, reverse_sums: bool = False):
        self.ctx = ctx
        self.reverse_sums = reverse_sums
        self.mp = mp = ctx.mp
        self.I = mp.mpc(0, 1)
        self.routes: Counter = Counter()
        self._pole = mp.mpf(POLE_THRESHOLD)
        const = constants(ctx)
        self.pi = const.pi
        self.C = const.catalan
        self.A = const.glaisher
        self.zeta3 = const.apery
        self.e = mp.e
        for name in ("exp", "log", "sin", "cos", "sinh", "cosh", "tanh", "atanh", "sqrt"):
            setattr(self, name, getattr(mp, name))

    def num(self, x):
        return self.mp.convert(x)

    def t3(self, x):
        """``3**x`` in working precision."""
        return self.mp.mpf(3) ** x

    def pow(self, base, exponent):
        """Principal power."""
        return c_pow(base, exponent, self.ctx)

    def _nonzero(self, value, what: str):
        if abs(value) < self._pole:
            raise DomainError(f"{what} is singular here")
        return value

    def tan(self, x):
        return self.mp.sin(x) / self._nonzero(self.mp.cos(x), "tan")

    def cot(self, x):
        return self.mp.cos(x) / self._nonzero(self.mp.sin(x), "cot")

    def sec(self, x):
        return 1 / self._nonzero(self.mp.cos(x), "sec")

    def csc(self, x):
        return 1 / self._nonzero(self.mp.sin(x), "csc")

    def coth(self, x):
        return 1 / self._nonzero(self.mp.tanh(x), "coth")

    def div(self, num, den, what: str = "denominator"):
        return num / self._nonzero(den, what)

    def gamma(self, z):
        z = self.mp.convert(z)
        nearest = self.mp.nint(self.mp.re(z))
        if nearest <= 0 and abs(z - nearest) < self._pole:
            raise DomainError("gamma pole")
        return gamma(z, self.ctx)

    def psi1(self, z):
        z = self.mp.convert(z)
        nearest = self.mp.nint(self.mp.re(z))
        if nearest <= 0 and abs(z - nearest) < self._pole:
            raise DomainError("polygamma pole")
        return polygamma(1, z, self.ctx)

    def phi(self, z, s, v):
        value, route = lerch_phi(LerchArgs(z, s, v), self.ctx)
        self.routes[route.value] += 1
        return value

    def dphi(self, z, s, v):
        """``d/ds Phi(z, s, v)``."""
        self.routes["s-derivative"] += 1
        return lerch_phi_sderiv(LerchArgs(z, s, v), self.ctx)

    def sum(self, terms):
        terms = list(terms)
        if self.reverse_sums:
            terms.reverse()
        return compensated_sum(terms, self.ctx)

    def prod(self, factors):
        return self.mp.fprod(factors)

    def route_notes(self) -> str:
        return ", ".join(f"{k} x{v}" for k, v in sorted(self.routes.items()))
