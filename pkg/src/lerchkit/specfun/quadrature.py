"""Exp-sinh quadrature on ``[0, inf)``.

The substitution ``t = exp(pi/2 sinh u)`` makes integrands with algebraic
endpoint behaviour at 0 and exponential decay at infinity decay double
exponentially in ``u``; the trapezoid rule in ``u`` then converges
geometrically as the step is halved.
"""

from __future__ import annotations

from typing import Callable

from ..mpcore import ConvergenceError, PrecisionContext


def exp_sinh(
    f_log: Callable,
    ctx: PrecisionContext,
    *,
    max_level: int = 12,
):
    """Integrate ``g`` over ``(0, inf)``.

    ``f_log(log_t)`` must return ``g(t) * t`` given ``log t``; taking the
    logarithm avoids forming very small ``t`` before exponentiating powers
    of it.  Returns the integral value.
    """
    mp = ctx.mp
    half_pi = mp.pi / 2
    tol = ctx.working_eps

    def node(u):
        return f_log(half_pi * mp.sinh(u)) * half_pi * mp.cosh(u)

    def sweep(h, start, stride):
        # Sum node(k*h) over k = start, start+stride, ... in both directions,
        # stopping each side after the weights become negligible.
        total = mp.zero
        scale = mp.zero
        for sign in (1, -1):
            k = start if sign == 1 else -start if start else -stride
            quiet = 0
            while quiet < 3:
                u = k * h
                if abs(u) > 12:
                    break
                val = node(u)
                total += val
                scale = max(scale, abs(val))
                quiet = quiet + 1 if abs(val) <= tol * scale else 0
                k += sign * stride
        return total

    h = mp.mpf(1) / 2
    estimate = sweep(h, 0, 1) * h
    for _ in range(max_level):
        refined = estimate / 2 + sweep(h / 2, 1, 2) * (h / 2)
        h /= 2
        if abs(refined - estimate) <= ctx.eps * max(abs(refined), tol) / 100:
            return refined
        estimate = refined
    raise ConvergenceError("exp-sinh quadrature did not converge")
