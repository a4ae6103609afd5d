"""Exact even-index Bernoulli numbers, memoised as Fractions."""

from __future__ import annotations

import math
import threading
from fractions import Fraction

_CACHE: list[Fraction] = [Fraction(1)]  # B_0, B_1, B_2, ...
_LOCK = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """``B_m`` with the convention ``B_1 = -1/2``."""
    if m < 0:
        raise ValueError("index must be non-negative")
    if m >= len(_CACHE):
        with _LOCK:
            for j in range(len(_CACHE), m + 1):
                acc = sum(math.comb(j + 1, k) * _CACHE[k] for k in range(j))
                _CACHE.append(-acc / (j + 1))
    return _CACHE[m]


def bernoulli_even(j: int) -> Fraction:
    """``B_{2j}``."""
    return bernoulli(2 * j)
