"""The registered identities.

Each formula receives an :class:`~lerchkit.identities.env.Env` ``E`` and a
parameter mapping ``P``.  Finite sums run over ``p = 0 .. n-1`` unless
stated otherwise and use compensated summation.
"""

from __future__ import annotations

import cmath
import math

from ..mpcore import ConvergenceError, sum_series
from .core import Identity, Kind, ParamSpec, Reading, Tier, register

# -- samplers ---------------------------------------------------------------

FORCED_K = (0, 1, 2, -1, -2)
POLE_GAP = 1e-3
MAX_ATTEMPTS = 10_000
# Factors in the partial product examined by the infinite-product check.
INFINITE_FACTORS = 12


def _n(rng, n_range):
    return rng.randint(n_range[0], n_range[1])


def _disk(rng, radius):
    r = radius * math.sqrt(rng.random())
    return cmath.rect(r, rng.uniform(-math.pi, math.pi))


def _trig_clear(m: float, n: int) -> bool:
    for j in range(n + 1):
        x = m * 3**j
        if abs(math.cos(x)) < POLE_GAP or abs(math.sin(x)) < POLE_GAP:
            return False
        if j < n and abs(2 * math.cos(2 * x) - 1) < POLE_GAP:
            return False
    return True


def _avoid(x: float, points) -> bool:
    return all(abs(x - q) >= POLE_GAP for q in points)


def _cos_clear(v: float, upto: int) -> bool:
    return all(
        abs(math.cos(v * 3**j)) >= POLE_GAP and abs(1 - 2 * math.cos(2 * v * 3**j)) >= POLE_GAP
        for j in range(upto + 1)
    )


def _rejection(draw):
    """Call ``draw`` until it returns a sample; it returns ``None`` to reject."""
    for _ in range(MAX_ATTEMPTS):
        sample = draw()
        if sample is not None:
            return sample
    raise ValueError(f"no admissible sample found in {MAX_ATTEMPTS} attempts")


def sample_degenerate(rng, i, n_range):
    n = _n(rng, n_range)

    def draw():
        m = rng.uniform(-3.0, 3.0)
        return {"m": m, "n": n} if abs(m) > 0.05 and _trig_clear(m, n) else None

    return _rejection(draw)


def sample_theorem(rng, i, n_range):
    if i < len(FORCED_K):
        k = FORCED_K[i]
    else:
        k = _disk(rng, 3.0)
    m = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.05, 0.5))
    return {"k": k, "a": rng.uniform(0.2, 3.0), "m": m, "n": _n(rng, n_range)}


def sample_functional(rng, i, n_range):
    return {"z": _disk(rng, 0.9), "s": _disk(rng, 3.0), "a": rng.uniform(0.1, 2.0)}


def _sample_a(lo, hi, poles=(), with_n=True):
    def sampler(rng, i, n_range):
        a = _rejection(lambda: (lambda x: x if _avoid(x, poles) else None)(rng.uniform(lo, hi)))
        return {"a": a, "n": _n(rng, n_range)} if with_n else {"a": a}

    return sampler


def _sample_pair(lo, hi, names=("m", "r"), with_n=True):
    def sampler(rng, i, n_range):
        def draw():
            vals = {nm: rng.uniform(lo, hi) for nm in names}
            return vals if all(abs(v) > 0.05 for v in vals.values()) else None

        vals = _rejection(draw)
        if with_n:
            vals["n"] = _n(rng, n_range)
        return vals

    return sampler


def _sample_cos_pair(with_n):
    def sampler(rng, i, n_range):
        n = _n(rng, n_range) if with_n else INFINITE_FACTORS

        def draw():
            m, r = rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)
            return (m, r) if _cos_clear(m, n) and _cos_clear(r, n) else None

        m, r = _rejection(draw)
        return {"m": m, "r": r, "n": n} if with_n else {"m": m, "r": r}

    return sampler


def sample_elliptic(rng, i, n_range):
    def draw():
        k, a, b = sorted(rng.uniform(-0.99, 0.99) for _ in range(3))
        xs = (k * math.sin(a), k * math.sin(b))
        if all(abs(x) > 1e-3 and _cos_clear(x, INFINITE_FACTORS) for x in xs):
            return {"k": k, "a": a, "b": b}
        return None

    return _rejection(draw)


def _sample_phi_prod_2(rng, i, n_range):
    m = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.1, 0.5))
    return {"m": m, "n": _n(rng, n_range)}


def _sample_z(radius, with_n=True):
    def sampler(rng, i, n_range):
        z = _rejection(lambda: (lambda w: w if abs(w) > 0.05 else None)(_disk(rng, radius)))
        return {"z": z, "n": _n(rng, n_range)} if with_n else {"z": z}

    return sampler


def sample_n_only(rng, i, n_range):
    lo, hi = n_range
    return {"n": lo + i % (hi - lo + 1)}


def sample_none(rng, i, n_range):
    return {}


# -- helpers ----------------------------------------------------------------

N_PARAM = ParamSpec("n", "integer, 1..6")
THEOREM_PARAMS = (
    ParamSpec("k", "complex, |k| <= 3, integers 0, 1, 2, -1, -2 forced"),
    ParamSpec("a", "real, (0.2, 3)"),
    ParamSpec("m", "complex, Re in (-1, 1), Im in (0.05, 0.5)"),
    N_PARAM,
)
FE_PARAMS = (
    ParamSpec("z", "complex, |z| <= 0.9"),
    ParamSpec("s", "complex, |s| <= 3"),
    ParamSpec("a", "real, (0.1, 2)"),
)


def _finite_sum(term):
    def lhs(E, P):
        return E.sum(term(E, P, p) for p in range(P["n"]))

    return lhs


def _finite_prod(factor, upper=lambda n: n):
    def lhs(E, P):
        return E.prod(factor(E, P, p) for p in range(upper(P["n"])))

    return lhs


def _identity(id, title, anchor, tier, params, lhs, rhs, sampler, **kw):
    return register(Identity(id, title, anchor, tier, tuple(params), lhs, rhs, sampler, **kw))


def _infinite(id, title, anchor, params, factor, limit, sampler, rate, tier=Tier.LIMIT):
    def lhs(E, P):
        return E.prod(factor(E, P, p) for p in range(INFINITE_FACTORS))

    return register(Identity(id, title, anchor, tier, tuple(params), lhs, limit, sampler,
                             kind=Kind.INFINITE, factor=factor, rate=rate))


# -- degenerate trigonometric sums ------------------------------------------

_identity(
    "DEG-SS", "Secant-sine sum, k = 0", "degenerate secant-sine sum", Tier.CORE,
    (ParamSpec("m", "real, off the poles of sec/tan"), N_PARAM),
    _finite_sum(lambda E, P, p: E.t3(-p) * E.sin(P["m"] * E.t3(p)) ** 3 * E.sec(P["m"] * E.t3(p + 1))),
    lambda E, P: E.num(3) / 8 * (E.t3(-P["n"]) * E.tan(P["m"] * E.t3(P["n"])) - E.tan(P["m"])),
    sample_degenerate,
)

_identity(
    "DEG-CC", "Cosecant-cosine sum, k = 0", "degenerate cosecant-cosine sum", Tier.CORE,
    (ParamSpec("m", "real, off the poles of csc"), N_PARAM),
    _finite_sum(lambda E, P, p: E.cos(2 * P["m"] * E.t3(p)) * E.csc(P["m"] * E.t3(p + 1))),
    lambda E, P: (E.csc(P["m"]) - E.csc(P["m"] * E.t3(P["n"]))) / 2,
    sample_degenerate,
)


def _deg_ss1_term(E, P, p):
    x = P["m"] * E.t3(p)
    num = -2 * E.I * E.sin(2 * x) - 2 * E.cos(2 * x) - E.I * (E.t3(p + 1) - 4) * E.tan(x) + 1
    return E.t3(-p) * E.div(num, 2 * E.cos(2 * x) - 1)


_identity(
    "DEG-SS1", "Second secant-sine sum, k = 0", "degenerate second secant-sine sum", Tier.CORE,
    (ParamSpec("m", "real, off the poles of tan"), N_PARAM),
    _finite_sum(_deg_ss1_term),
    lambda E, P: E.num(3) / 2 * (E.t3(-P["n"]) - 1) * (1 + E.I * E.tan(P["m"] * E.t3(P["n"]))),
    sample_degenerate,
)

# -- main theorems ----------------------------------------------------------


def _thm_ss_term(E, P, p):
    k, m = P["k"], P["m"]
    L = E.log(P["a"])
    x = m * E.t3(p)
    z = -E.exp(2 * E.I * E.t3(p + 1) * m)
    shift = E.I * E.t3(-p) * L
    bracket = (
        -3 * E.phi(z, -k, (2 - shift) / 6)
        + 3 * E.exp(2 * E.I * x) * E.phi(z, -k, (4 - shift) / 6)
        - 2 * E.exp(4 * E.I * x) * E.phi(z, -k, (6 - shift) / 6)
    )
    return E.t3(-p) * (
        E.pow(L, k) + E.pow(2, k) * E.pow(E.I * E.t3(p + 1), k) * E.exp(2 * E.I * x) * bracket
    )


def _thm_ss_rhs(E, P):
    k, m, n = P["k"], P["m"], P["n"]
    L = E.log(P["a"])
    big = E.pow(E.I * E.t3(n), k) * E.exp(2 * E.I * m * E.t3(n)) * E.phi(
        -E.exp(2 * E.I * E.t3(n) * m), -k, 1 - E.I * E.t3(-n) * L / 2
    )
    small = E.pow(E.I, k) * E.exp(2 * E.I * m) * E.t3(n) * E.phi(-E.exp(2 * E.I * m), -k, 1 - E.I * L / 2)
    return E.t3(1 - n) / 2 * ((E.t3(n) - 1) * E.pow(L, k) + E.pow(2, k + 1) * (big - small))


_identity(
    "THM-SS", "Secant-sine sum of Lerch functions", "main theorem, secant-sine form", Tier.CORE,
    THEOREM_PARAMS, _finite_sum(_thm_ss_term), _thm_ss_rhs, sample_theorem,
)


def _thm_cc_term(E, P, p):
    k, m = P["k"], P["m"]
    L = E.log(P["a"])
    x = m * E.t3(p)
    z = E.exp(2 * E.I * E.t3(p + 1) * m)
    shift = E.I * E.t3(-p) * L
    return E.pow(E.I * E.t3(p + 1), k) * E.exp(E.I * x) * (
        E.phi(z, -k, (1 - shift) / 6) + E.exp(4 * E.I * x) * E.phi(z, -k, (5 - shift) / 6)
    )


def _thm_cc_rhs(E, P):
    k, m, n = P["k"], P["m"], P["n"]
    L = E.log(P["a"])
    first = E.pow(E.I, k) * E.exp(E.I * m) * E.phi(E.exp(2 * E.I * m), -k, E.num(0.5) - E.I * L / 2)
    second = E.pow(E.I * E.t3(n), k) * E.exp(E.I * m * E.t3(n)) * E.phi(
        E.exp(2 * E.I * E.t3(n) * m), -k, E.num(0.5) - E.I * E.t3(-n) * L / 2
    )
    return first - second


_identity(
    "THM-CC", "Cosecant-cosine sum of Lerch functions", "main theorem, cosecant-cosine form", Tier.CORE,
    THEOREM_PARAMS, _finite_sum(_thm_cc_term), _thm_cc_rhs, sample_theorem,
)


def _thm_ss1_term(E, P, p):
    k, m, a = P["k"], P["m"], P["a"]
    x = m * E.t3(p)
    z = -E.exp(2 * E.I * E.t3(p + 1) * m)
    c = 3 * (E.t3(p) - 1)
    b = E.t3(-p) * a
    bracket = (
        c * E.phi(z, -k, (b + 2) / 6)
        - c * E.exp(2 * E.I * x) * E.phi(z, -k, (b + 4) / 6)
        - 2 * E.exp(4 * E.I * x) * E.phi(z, -k, (b + 6) / 6)
    )
    return E.t3(-p) * E.pow(E.I * E.t3(p + 1), k) * E.exp(2 * E.I * x) * bracket


def _thm_ss1_rhs(E, P):
    k, m, a, n = P["k"], P["m"], P["a"], P["n"]
    return (
        -3 * E.I * (E.t3(n) - 1) * E.pow(E.I * E.t3(n), k - 1) * E.exp(2 * E.I * m * E.t3(n))
        * E.phi(-E.exp(2 * E.I * E.t3(n) * m), -k, E.t3(-n) * a / 2 + 1)
    )


_identity(
    "THM-SS1", "Second secant-sine sum of Lerch functions", "main theorem, second secant-sine form",
    Tier.CORE, THEOREM_PARAMS, _finite_sum(_thm_ss1_term), _thm_ss1_rhs, sample_theorem,
)

# -- functional equations ---------------------------------------------------


def _fe_lhs(E, P):
    return E.phi(P["z"], P["s"], P["a"])


def _ninth_part(E, z, s, a):
    z3, z9 = z**3, z**9
    return E.phi(z9, s, (a + 2) / 9) + z**6 * E.phi(z9, s, (a + 8) / 9) + z3 * E.phi(z9, s, (a + 5) / 9)


def _fe_9a_rhs(E, P):
    z, s, a = E.num(P["z"]), E.num(P["s"]), E.num(P["a"])
    z3 = z**3
    thirds = 3 * E.phi(z3, s, a / 3) + z * (3 * E.phi(z3, s, (a + 1) / 3) + 2 * z * E.phi(z3, s, (a + 2) / 3))
    return E.pow(3, -2 * s - 1) * (E.pow(3, s) * thirds + z**2 * _ninth_part(E, z, s, a))


def _fe_3_rhs(E, P):
    z, s, a = E.num(P["z"]), E.num(P["s"]), E.num(P["a"])
    z3 = z**3
    return E.pow(3, -s) * (
        E.phi(z3, s, a / 3) + z * (E.phi(z3, s, (a + 1) / 3) + z * E.phi(z3, s, (a + 2) / 3))
    )


def _fe_9b_rhs(E, P):
    z, s, a = E.num(P["z"]), E.num(P["s"]), E.num(P["a"])
    z3 = z**3
    thirds = 3 * E.phi(z3, s, a / 3) + z * (3 * E.phi(z3, s, (a + 1) / 3) - z * E.phi(z3, s, (a + 2) / 3))
    return E.pow(3, -2 * s - 1) * (E.pow(3, s) * thirds + 4 * z**2 * _ninth_part(E, z, s, a))


_identity("FE-9A", "Lerch splitting into z^3 and z^9 parts", "functional equation, base 9, first form",
          Tier.FUNCTIONAL, FE_PARAMS, _fe_lhs, _fe_9a_rhs, sample_functional)
_identity("FE-3", "Lerch splitting into z^3 parts", "functional equation, base 3",
          Tier.FUNCTIONAL, FE_PARAMS, _fe_lhs, _fe_3_rhs, sample_functional)
_identity("FE-9B", "Lerch splitting with the 4 z^2 term", "functional equation, base 9, second form",
          Tier.FUNCTIONAL, FE_PARAMS, _fe_lhs, _fe_9b_rhs, sample_functional)

# -- products from the secant-sine theorem ----------------------------------

A_PARAM = ParamSpec("a", "real, (0.2, 3), away from gamma poles")


def _gp_ss_factor(E, P, p):
    a = E.num(P["a"])
    b = E.t3(-p - 1) * a
    first = E.pow(E.gamma(b + E.num(0.5)) / E.gamma(b + 1), 2 * E.t3(-p - 1))
    num = 9 ** (p + 1) * E.gamma(b + E.num(1) / 6) * E.gamma(b + E.num(5) / 6)
    den = (E.t3(p) - a) * (2 * E.t3(p) - a) * E.gamma((E.t3(-p) * a - 2) / 3) * E.gamma((E.t3(-p) * a - 1) / 3)
    return first * E.pow(E.div(num, den), E.t3(-p))


def _gp_ss_rhs(E, P):
    a, n = E.num(P["a"]), P["n"]
    b = E.t3(-n) * a
    return (
        E.pow(3, E.num(3) / 4 * (1 - E.t3(-n))) * E.gamma(a + E.num(0.5))
        * E.pow(E.gamma(b + 1) / E.gamma(b + E.num(0.5)), E.t3(-n)) / E.gamma(a + 1)
    )


_identity("GP-SS", "Finite product of gamma quotients", "secant-sine table, gamma-quotient product",
          Tier.PRODUCT, (A_PARAM, N_PARAM), _finite_prod(_gp_ss_factor), _gp_ss_rhs,
          _sample_a(0.2, 3.0, poles=(1, 2)))
_infinite("GP-SS-INF", "Infinite product of gamma quotients", "secant-sine table, gamma-quotient limit",
          (A_PARAM,), _gp_ss_factor,
          lambda E, P: E.pow(3, E.num(0.75)) * E.gamma(E.num(P["a"]) + E.num(0.5)) / E.gamma(E.num(P["a"]) + 1),
          _sample_a(0.2, 3.0, poles=(1, 2), with_n=False), rate=1 / 3)


def _cp_factor(E, P, p):
    m, r = P["m"], P["r"]
    ratio = E.div(E.cos(E.t3(p) * m), E.cos(E.t3(p) * r), "cos")
    num = ratio**16 * (1 - 2 * E.cos(2 * E.t3(p) * r)) ** 2
    return E.pow(E.div(num, (1 - 2 * E.cos(2 * E.t3(p) * m)) ** 2), E.t3(-2 * p))


def _cp_rhs_squared(E, P):
    m, r, n = P["m"], P["r"], P["n"]
    tail = E.div(E.cos(E.t3(n) * r), E.cos(E.t3(n) * m), "cos") ** 2
    return E.div(E.cos(m), E.cos(r), "cos") ** 18 * E.pow(tail, E.t3(2 - 2 * n))


def _cp_rhs_principal(E, P):
    m, r, n = P["m"], P["r"], P["n"]
    ratio = E.div(E.cos(E.t3(n) * r), E.cos(E.t3(n) * m), "cos")
    return E.div(E.cos(m), E.cos(r), "cos") ** 18 * E.pow(ratio, 2 * E.t3(2 - 2 * n))


_identity(
    "CP-SS", "Finite product of cosine-quotient roots", "secant-sine table, cosine-quotient product",
    Tier.PRODUCT, (ParamSpec("m", "real, |m| < 1.5"), ParamSpec("r", "real, |r| < 1.5"), N_PARAM),
    _finite_prod(_cp_factor), _cp_rhs_squared, _sample_cos_pair(with_n=True),
    alternates=(Reading("principal-power", "principal power of the signed cosine ratio",
                        _finite_prod(_cp_factor), _cp_rhs_principal),),
    notes="the right side raises the squared cosine ratio to 3^(2-2n)",
)


def _cp_inf_factor(E, P, p):
    return E.pow(_cp_factor(E, P, p), E.num(1) / 18)


_infinite("CP-SS-INF", "Infinite product of cosine-quotient roots", "secant-sine table, cosine-quotient limit",
          (ParamSpec("m", "real, |m| < 1.5"), ParamSpec("r", "real, |r| < 1.5")), _cp_inf_factor,
          lambda E, P: E.cos(P["m"]) / E.cos(P["r"]), _sample_cos_pair(with_n=False), rate=1 / 9)


def _qg_ss_factor(E, P, p):
    a = E.num(P["a"])
    num = E.pow(3, a * E.t3(-p) + 2 * p) * E.gamma(E.t3(-p - 1) * a - 1)
    den = (a**2 - a * E.t3(p + 1) + 2 * 9**p) * E.pow(E.gamma(E.t3(-p - 1) * a + 1), E.num(2) / 3) \
        * E.gamma(E.t3(-p) * a - 3)
    return E.pow(E.div(num, den), E.t3(-p))


def _qg_ss_rhs(E, P):
    a, n = E.num(P["a"]), P["n"]
    expo = E.num(1) / 8 * E.num(9) ** (-n) * (9 * a * (9**n - 1) + 8 * 3**n * (-n + 3 ** (n + 1) - 3))
    return E.pow(3, expo) * E.pow(a, E.t3(-n)) * E.pow(E.gamma(E.t3(-n) * a), E.t3(-n)) / E.gamma(a + 1)


_identity("QG-SS", "Finite product of gamma quotients with powers of 3", "secant-sine table, second gamma product",
          Tier.PRODUCT, (A_PARAM, N_PARAM), _finite_prod(_qg_ss_factor), _qg_ss_rhs,
          _sample_a(0.2, 3.0, poles=(1, 2)))
_infinite("QG-SS-INF", "Infinite product of gamma quotients with powers of 3",
          "secant-sine table, second gamma limit", (A_PARAM,), _qg_ss_factor,
          lambda E, P: E.pow(3, 9 * E.num(P["a"]) / 8 + 3) / E.gamma(E.num(P["a"]) + 1),
          _sample_a(0.2, 3.0, poles=(1, 2), with_n=False), rate=1 / 3)


def _cj_base(E, P, p):
    m = P["m"]
    num = E.pow(E.exp(-2 * m * E.t3(p + 1)) + 1, E.num(2) / 3) * E.cosh(m * E.t3(p)) ** 2
    return num / (2 * E.cosh(2 * m * E.t3(p)) - 1)


def _cj_rhs(E, P):
    m, n = P["m"], P["n"]
    return (
        E.pow(2, E.num(3) / 4 * (1 + E.t3(1 - 2 * n))) * E.cosh(m) ** 3
        / (E.exp(3 * m) * E.pow(1 + E.exp(-2 * E.t3(n) * m), E.t3(1 - 2 * n)))
    )


M_REAL = ParamSpec("m", "real, (-1, 2)")
_identity("CJ-SS", "Finite product of hyperbolic cosines", "secant-sine table, cosine product",
          Tier.PRODUCT, (M_REAL, N_PARAM),
          _finite_prod(lambda E, P, p: E.pow(_cj_base(E, P, p), E.t3(-2 * p))), _cj_rhs,
          _sample_pair(-1.0, 2.0, names=("m",)))
_infinite("CJ-SS-INF", "Infinite product of hyperbolic cosines", "secant-sine table, cosine limit",
          (M_REAL,), lambda E, P, p: E.pow(_cj_base(E, P, p), E.t3(-2 * p - 1)),
          lambda E, P: (E.exp(-2 * E.num(P["m"])) + 1) / E.pow(2, E.num(0.75)),
          _sample_pair(-1.0, 2.0, names=("m",), with_n=False), rate=1 / 9)


def _ell_factor(E, P, p):
    x = P["k"] * E.sin(P["a"])
    y = P["k"] * E.sin(P["b"])
    num = E.cos(E.t3(p) * x) ** 16 * (1 - 2 * E.cos(2 * E.t3(p) * y)) ** 2 * E.sec(E.t3(p) * y) ** 16
    base = E.div(num, (1 - 2 * E.cos(2 * E.t3(p) * x)) ** 2)
    return E.pow(base, E.t3(-2 - 2 * p) / 2)


_infinite("ELL", "Infinite cosine product as a ratio of elliptic-type roots",
          "secant-sine section, elliptic-function product",
          (ParamSpec("k", "real, (-1, 1)"), ParamSpec("a", "real, k < a"), ParamSpec("b", "real, a < b < 1")),
          _ell_factor,
          lambda E, P: E.cos(P["k"] * E.sin(P["a"])) / E.cos(P["k"] * E.sin(P["b"])),
          sample_elliptic, rate=1 / 9)

# -- products from the cosecant-cosine theorem ------------------------------


def _gp_cc_factor(E, P, p):
    b = E.t3(-p) * E.num(P["a"])
    return E.gamma((b + 1) / 6) * E.gamma((b + 5) / 6) / (2 * E.pi)


def _gp_cc_rhs(E, P):
    a, n = E.num(P["a"]), P["n"]
    return (
        E.pow(3, -a * E.t3(1 - n) * (E.t3(n) - 1) / 4) * E.gamma((a + 1) / 2)
        / E.gamma((E.t3(-n) * a + 1) / 2)
    )


A_POS = ParamSpec("a", "real, (0.2, 3)")
_identity("GP-CC", "Finite product of gamma functions", "cosecant-cosine table, gamma product",
          Tier.PRODUCT, (A_POS, N_PARAM), _finite_prod(_gp_cc_factor), _gp_cc_rhs, _sample_a(0.2, 3.0))
_infinite("GP-CC-INF", "Infinite product of gamma functions", "cosecant-cosine table, gamma limit",
          (A_POS,), _gp_cc_factor,
          lambda E, P: E.pow(3, -3 * E.num(P["a"]) / 4) * E.gamma((E.num(P["a"]) + 1) / 2) / E.sqrt(E.pi),
          _sample_a(0.2, 3.0, with_n=False), rate=1 / 3)


def _th_factor(E, P, p):
    m, r = P["m"], P["r"]
    cm, cr = E.cosh(2 * E.t3(p) * m), E.cosh(2 * E.t3(p) * r)
    quot = ((1 + 2 * cm) * (-1 + 2 * cr)) / ((-1 + 2 * cm) * (1 + 2 * cr))
    return E.pow(quot, E.t3(-p)) * E.pow(E.tanh(E.t3(p) * r) / E.tanh(E.t3(p) * m), 2 * E.t3(-p))


def _th_rhs(E, P):
    m, r, n = P["m"], P["r"], P["n"]
    return (
        E.pow(E.tanh(E.t3(n) * m) / E.tanh(E.t3(n) * r), E.t3(1 - n))
        * (E.tanh(r) / E.tanh(m)) ** 3
    )


MR_POS = (ParamSpec("m", "real, (0.05, 2)"), ParamSpec("r", "real, (0.05, 2)"))
_identity("TH-CC", "Finite product of hyperbolic tangent quotients", "cosecant-cosine table, tanh product",
          Tier.PRODUCT, MR_POS + (N_PARAM,), _finite_prod(_th_factor), _th_rhs, _sample_pair(0.05, 2.0))
_infinite("TH-CC-INF", "Infinite product of hyperbolic tangent quotients", "cosecant-cosine table, tanh limit",
          MR_POS, _th_factor, lambda E, P: (E.tanh(P["r"]) / E.tanh(P["m"])) ** 3,
          _sample_pair(0.05, 2.0, with_n=False), rate=1 / 3)


def _qg_cc1_factor(E, P, p):
    a = E.num(P["a"])
    b = E.t3(-p) * a
    num = E.gamma((b + 7) / 12) * E.gamma((b + 11) / 12)
    den = E.gamma(E.t3(-p - 1) * (a + E.t3(p)) / 4) * E.gamma((b + 5) / 12)
    q = num / den
    return q if p % 2 == 0 else 1 / q


def _qg_cc1_rhs(E, P):
    a, n = E.num(P["a"]), P["n"]
    b = E.t3(-n) * a
    ratio = E.gamma((b + 1) / 4) / E.gamma((b + 3) / 4)
    return (
        E.pow(3, E.num((-1) ** n - 1) / 4) * E.gamma((a + 3) / 4)
        * (ratio if n % 2 == 0 else 1 / ratio) / E.gamma((a + 1) / 4)
    )


A_WIDE = ParamSpec("a", "real, (0.1, 10)")
_identity("QG-CC1", "Alternating product of gamma quotients", "cosecant-cosine table, alternating gamma product",
          Tier.PRODUCT, (A_WIDE, N_PARAM), _finite_prod(_qg_cc1_factor), _qg_cc1_rhs, _sample_a(0.1, 10.0))


def _qg_cc1_partials(E, P):
    acc = E.num(1)
    out = []
    for p in range(10):
        acc = acc * _qg_cc1_factor(E, P, p)
        out.append(acc)
    return out


_identity(
    "QG-CC1-BOUND", "Upper bound for the alternating gamma product",
    "cosecant-cosine table, upper bound for the infinite alternating product", Tier.LIMIT,
    (A_WIDE,), _qg_cc1_partials,
    lambda E, P: (
        E.gamma(E.num(0.25)) * E.gamma((E.num(P["a"]) + 3) / 4)
        / (E.gamma(E.num(0.75)) * E.gamma((E.num(P["a"]) + 1) / 4))
    ),
    _sample_a(0.1, 10.0, with_n=False), kind=Kind.BOUND,
    notes="strict inequality for the partial products n = 1..10",
)


def _coscos_factor(E, P, p):
    x = E.num(P["x"])
    s3 = E.sqrt(3)
    th1 = E.tanh(E.t3(p) * x / 2)
    th2 = E.tanh(E.t3(p + 1) * x / 2)
    w = E.t3(-p - 1)
    q = E.pow(((s3 + E.I * th1) * (s3 - 3 * E.I * th2)) / ((s3 - 3 * E.I * th1) * (s3 + E.I * th2)), w)
    tc = E.pow(E.div(th2, th1, "tanh"), 2 * w)
    d = 2 * w * (E.atanh((1 - E.I * s3 * th1) / 2) - E.atanh((1 - E.I * s3 * th2) / 2))
    return q * tc * (E.sinh(d) + E.cosh(d))


def _coscos_rhs_printed(E, P):
    x, n = E.num(P["x"]), P["n"]
    c = E.cos(x / 3)
    inner = E.tan(E.t3(n - 1) * x / 2) * E.cot(E.t3(n) * x / 2)
    return (2 * c + 1) * E.pow(inner, E.t3(-n)) / E.div(2 * c - 1, 1)


def _coscos_rhs_hyperbolic(E, P):
    x, n = E.num(P["x"]), P["n"]
    c = E.cosh(x)
    inner = E.tanh(E.t3(n) * x / 2) * E.coth(E.t3(n + 1) * x / 2)
    return (2 * c + 1) / (2 * c - 1) * E.pow(inner, E.t3(-n))


X_PARAM = ParamSpec("x", "real, (0.1, 2)")
_identity(
    "CC-COSCOS", "Finite product of tanh-built cosine factors", "cosecant-cosine table, cosine product with p up to n",
    Tier.PRODUCT, (X_PARAM, N_PARAM),
    _finite_prod(_coscos_factor, upper=lambda n: n + 1), _coscos_rhs_printed,
    _sample_pair(0.1, 2.0, names=("x",)),
    alternates=(
        Reading("upper-limit-n-1", "product over p = 0..n-1 with the same right side",
                _finite_prod(_coscos_factor), _coscos_rhs_printed),
        Reading("hyperbolic-rhs", "product over p = 0..n-1; right side with x replaced by 3ix",
                _finite_prod(_coscos_factor), _coscos_rhs_hyperbolic),
    ),
)
_infinite("CC-COSCOS-INF", "Infinite product of tanh-built cosine factors", "cosecant-cosine table, cosine limit",
          (X_PARAM,), _coscos_factor,
          lambda E, P: (2 * E.cosh(P["x"]) + 1) / (2 * E.cosh(P["x"]) - 1),
          _sample_pair(0.1, 2.0, names=("x",), with_n=False), rate=1 / 3)


def _phi1_factor(E, P, p):
    m = E.num(P["m"])
    z = E.exp(-2 * E.t3(p + 1) * m)
    inner = E.exp(4 * m * E.t3(p)) * E.phi(z, 1, (1 + E.t3(-p)) / 6) + E.phi(z, 1, (5 + E.t3(-p)) / 6)
    return E.exp(E.t3(-p) * E.exp(-5 * m * E.t3(p)) * inner)


def _phi1_rhs(E, P):
    m, n = E.num(P["m"]), P["n"]
    em = E.exp(m)
    tail = E.t3(1 - n) * E.exp(-m * E.t3(n)) * E.phi(E.exp(-2 * E.t3(n) * m), 1, (1 + E.t3(-n)) / 2)
    return E.pow(2, -3 * em) * E.pow(E.coth(m) + 1, 3 * em) * E.exp(-tail)


_identity("PHI-PROD-1", "Exponential product of Lerch functions, real m", "cosecant-cosine table, first Lerch product",
          Tier.PRODUCT, (ParamSpec("m", "real, (0.1, 2)"), N_PARAM), _finite_prod(_phi1_factor), _phi1_rhs,
          _sample_pair(0.1, 2.0, names=("m",)))


def _phi2_factor_n(E, P, p):
    m, n = E.num(P["m"]), P["n"]
    z = E.exp(2 * E.I * E.t3(p + 1) * m)
    x = m * E.t3(p)
    inner = E.phi(z, 1, (1 + E.t3(n - p)) / 6) + E.exp(4 * E.I * x) * E.phi(z, 1, (5 + E.t3(n - p)) / 6)
    return E.exp(E.t3(-p) * E.exp(E.I * x) * inner)


def _phi2_rhs(E, P):
    m, n = E.num(P["m"]), P["n"]
    base = 1 - E.exp(2 * E.I * m * E.t3(n))
    return (
        E.pow(base, E.t3(1 - n) * E.exp(-E.I * m * E.t3(n)))
        * E.exp(3 * E.exp(E.I * m) * E.phi(E.exp(2 * E.I * m), 1, (1 + E.t3(n)) / 2))
    )


_identity("PHI-PROD-2", "Exponential product of Lerch functions, complex m",
          "cosecant-cosine table, second Lerch product (shift coupled to n)",
          Tier.PRODUCT, (ParamSpec("m", "complex, Re in (-1, 1), Im in (0.1, 0.5)"), N_PARAM),
          _finite_prod(_phi2_factor_n), _phi2_rhs, _sample_phi_prod_2)

# -- constants from the cosecant-cosine theorem -----------------------------


def _log_i3(E, j):
    return E.log(E.I * E.t3(j))


def _gk_cc_term(E, P, p):
    pi, t = E.pi, E.t3(p)
    pre = E.csc(pi * t / 2) ** 2 / (8 * (2 * E.cos(pi * t) + 1) ** 2)
    trig = 2 * _log_i3(E, p + 1) * (
        t * (5 * E.cos(pi * t / 2) + E.cos(5 * pi * t / 2)) - E.I * (E.sin(pi * t / 2) + E.sin(5 * pi * t / 2))
    )
    lerch = (
        2 * E.t3(p + 1) * E.exp(-E.num(5) / 2 * E.I * pi * t) * (-1 + E.exp(E.I * pi * E.t3(p + 1))) ** 2
        * (E.dphi(-1, -1, (E.t3(-p) + 1) / 6) + E.exp(2 * E.I * pi * t) * E.dphi(-1, -1, (E.t3(-p) + 5) / 6))
    )
    return pre * (trig - lerch)


def _gk_cc_rhs(E, P):
    pi, n = E.pi, P["n"]
    t = E.t3(n)
    return (
        -t * E.exp(E.I * pi * t / 2) * E.dphi(-1, -1, (E.t3(-n) + 1) / 2)
        + E.I * E.log(E.A**3 / (E.pow(2, E.num(1) / 3) * E.exp(E.num(0.25))))
        + (pi * E.cos(pi * t) + 4 * _log_i3(E, n) * (t * E.cos(pi * t / 2) - E.I * E.sin(pi * t / 2)) - pi)
        / (8 * (E.cos(pi * t) - 1))
    )


N_ONLY = (ParamSpec("n", "integer, 1..6"),)
_identity("GK-CC", "Squared cosecant sum giving Glaisher's constant", "cosecant-cosine table, Glaisher-Kinkelin series",
          Tier.CONSTANT, N_ONLY, _finite_sum(_gk_cc_term), _gk_cc_rhs, sample_n_only)


def _ap_cc_term(E, P, p):
    pi = E.pi
    c = E.csc(pi * E.t3(p + 1) / 2) ** 3
    return c * (
        4 * 9 ** (p + 1) * E.dphi(-1, -2, (E.t3(-p) + 1) / 6)
        + 4 * 9 ** (p + 1) * E.dphi(-1, -2, (E.t3(-p) + 5) / 6)
        + (5 * 9**p - 1) * _log_i3(E, p + 1)
    )


def _ap_cc_rhs(E, P):
    pi, n = E.pi, P["n"]
    c = E.csc(pi * E.t3(n) / 2) ** 3
    return (
        4 * 9**n * c * E.dphi(-1, -2, (E.t3(-n) + 1) / 2)
        + (9**n - 1) * _log_i3(E, n) * c / 2
        - 7 * E.zeta3 / pi**2
    )


_identity("AP-CC", "Cubed cosecant sum giving Apery's constant", "cosecant-cosine table, Apery series",
          Tier.CONSTANT, N_ONLY, _finite_sum(_ap_cc_term), _ap_cc_rhs, sample_n_only)


def _cat_cc1_term(E, P, p):
    u = E.t3(-p)
    return E.num(9) ** (-p) * (E.psi1((2 + u) / 12) + E.psi1((10 + u) / 12))


def _cat_cc1_rhs(E, P):
    n = P["n"]
    return 9 * (-8 * E.C - E.num(9) ** (-n) * E.psi1((2 + E.t3(-n)) / 4) + E.pi**2)


_identity("CAT-CC-1", "Trigamma sum giving Catalan's constant", "cosecant-cosine table, Catalan trigamma series",
          Tier.CONSTANT, N_ONLY, _finite_sum(_cat_cc1_term), _cat_cc1_rhs, sample_n_only)


def _cat_cc2_term(E, P, p):
    u = E.t3(-p)
    return E.num(9) ** (-p) * (
        E.dphi(1, 2, (2 - u) / 12) + E.dphi(1, 2, (5 - u / 2) / 6)
        - _log_i3(E, p + 1) * (E.psi1((2 - u) / 12) + E.psi1((10 - u) / 12))
    )


def _cat_cc2_rhs(E, P):
    n = P["n"]
    w = E.num(0.5) - E.t3(-n) / 4
    return 9 * (
        -E.num(9) ** (-n) * E.dphi(1, 2, w) + E.dphi(1, 2, E.num(0.25))
        - E.I * E.pi / 2 * (8 * E.C + E.pi**2)
        + E.num(9) ** (-n) * _log_i3(E, n) * E.psi1(w)
    )


_identity("CAT-CC-2", "Zeta-derivative sum giving Catalan's constant",
          "cosecant-cosine table, Catalan derivative series",
          Tier.CONSTANT, N_ONLY, _finite_sum(_cat_cc2_term), _cat_cc2_rhs, sample_n_only)


def _cat_cc3_term(E, P, p):
    pi, t = E.pi, E.t3(p)
    fixed = -12 * (E.dphi(-1, -1, E.num(1) / 6) + E.dphi(-1, -1, E.num(5) / 6))
    trig = E.exp(E.num(5) / 2 * E.I * pi * t) * _log_i3(E, p + 1) * (5 * E.cos(pi * t / 2) + E.cos(5 * pi * t / 2))
    return t * E.exp(-E.num(5) / 2 * E.I * pi * t) * E.csc(pi * E.t3(p + 1) / 2) ** 2 * (fixed + trig)


def _cat_cc3_rhs(E, P):
    pi, n = E.pi, P["n"]
    t = E.t3(n)
    num = 4 * E.C * (t * E.exp(E.I * pi * t / 2) * E.sin(pi * t / 2) ** 2 - E.I) \
        + pi * t * _log_i3(E, n) * E.cos(pi * t / 2)
    return 2 * num / (pi * (E.cos(pi * t) - 1))


_identity("CAT-CC-3", "Lerch-derivative sum with exponential weights giving Catalan's constant",
          "cosecant-cosine table, Catalan series with exponential weights",
          Tier.CONSTANT, N_ONLY, _finite_sum(_cat_cc3_term), _cat_cc3_rhs, sample_n_only)

# -- constants from the secant-sine theorem ---------------------------------


def _cat_ss_term(E, P, p):
    u = E.t3(-p)
    f = E.psi1
    return E.num(27) ** (-p) * (
        3 * f((2 + u) / 12) - 3 * f((4 + u) / 12) + 2 * f((6 + u) / 12)
        - 3 * f((8 + u) / 12) + 3 * f((10 + u) / 12) - 2 * (8 * 9 ** (p + 1) + f((12 + u) / 12))
    )


def _cat_ss_rhs(E, P):
    n = P["n"]
    u = E.t3(-n)
    return E.num(27) ** (1 - n) * (
        8 * 9**n * (-2 * E.C * 3**n + 3**n + 1) + E.psi1(1 + u / 4) - E.psi1((2 + u) / 4)
    )


_identity("CAT-SS", "Trigamma sum with weights 27^-p giving Catalan's constant",
          "secant-sine table, Catalan trigamma series",
          Tier.CONSTANT, N_ONLY, _finite_sum(_cat_ss_term), _cat_ss_rhs, sample_n_only)

_identity("GK-SS", "Difference of Lerch derivatives giving Glaisher's constant",
          "secant-sine table, Glaisher difference", Tier.CONSTANT, (),
          lambda E, P: E.dphi(-1, -1, E.num(1) / 3) - E.dphi(-1, -1, E.num(2) / 3),
          lambda E, P: E.log(
              E.pow(2, E.num(2) / 9) * E.pow(3, E.num(1) / 12) * E.exp(E.num(1) / 6) / E.A**2
          ),
          sample_none)

_identity("AP-SS", "Difference of Lerch derivatives giving Apery's constant",
          "secant-sine table, Apery difference", Tier.CONSTANT, (),
          lambda E, P: E.dphi(-1, -2, E.num(2) / 3) - E.dphi(-1, -2, E.num(1) / 3),
          lambda E, P: 14 * E.zeta3 / (9 * E.pi**2),
          sample_none)


def _cat_ss2_term(E, P, p):
    u = E.t3(-p)
    return (
        18 * E.dphi(-1, -1, (2 - u) / 6) - 18 * E.dphi(-1, -1, (4 - u) / 6)
        + 12 * E.dphi(-1, -1, (6 - u) / 6) + u * _log_i3(E, p + 1)
    )


def _cat_ss2_rhs(E, P):
    n, pi = P["n"], E.pi
    return (
        -6 * pi * E.dphi(-1, -1, 1 - E.t3(-n) / 2) + 6 * E.C
        + E.num(3) / 2 * (pi - pi * E.t3(-n)) * _log_i3(E, n)
    ) / pi


_identity("CAT-SS-2", "Lerch-derivative sum giving Catalan's constant",
          "secant-sine table, Catalan derivative series",
          Tier.CONSTANT, N_ONLY, _finite_sum(_cat_ss2_term), _cat_ss2_rhs, sample_n_only)

# -- products from the second secant-sine theorem ---------------------------


def _gp_ss1a_factor(E, P, p):
    a = E.num(P["a"])
    t3 = E.t3
    first = E.pow(1 - 2 * t3(p + 1) / a, 2 * t3(-p - 1))
    ratio = E.pow(E.gamma((t3(-p) * a - 6) / 12) / E.gamma(t3(-p - 1) * a / 4), 2 * t3(-p - 1))
    inner = (
        E.pow(3, -a * t3(-p) / 4 - 2 * p + E.num(1.5)) * (a**2 - 4 * a * t3(p + 1) + 32 * 9**p)
        * E.gamma(t3(-p) * a / 4 - 3)
        / (E.gamma(t3(-p - 1) * a / 4 - 1) * E.gamma((t3(-p) * a + 2) / 12) * E.gamma((t3(-p) * a + 10) / 12))
    )
    return first * ratio * E.pow(inner, 1 - t3(-p))


def _gp_ss1a_rhs(E, P):
    a, n = E.num(P["a"]), P["n"]
    t3 = E.t3
    return (
        E.pow(2, E.num(3) / 2 * (2 * n + t3(1 - n) - 3)) * E.pow(3, (-2 * n - t3(1 - n) + 3) / 4)
        * E.pow(E.pi, E.num(3) / 2 * (1 - t3(-n)) - n) * E.pow(1 - 2 * t3(n) / a, -t3(-n))
        / a * (a - 2 * t3(n))
        * E.pow(E.gamma((t3(-n) * a - 2) / 4) / E.gamma(t3(-n) * a / 4), 1 - t3(-n))
    )


_identity("GP-SS1-A", "Finite product of gamma quotients, second secant-sine form, first kind",
          "second secant-sine table, first gamma-quotient product", Tier.PRODUCT,
          (ParamSpec("a", "real, (0.2, 1.9)"), N_PARAM), _finite_prod(_gp_ss1a_factor), _gp_ss1a_rhs,
          _sample_a(0.2, 1.9),
          notes="sampled on a range where the principal powers stay on one branch")


def _gp_ss1b_factor(E, P, p):
    a = E.num(P["a"])
    t3 = E.t3
    g = E.gamma(t3(-p - 1) * a / 2)
    inner = (
        (a * t3(-p) - 4) * (a * t3(-p) - 2) * E.pow(a * t3(-p - 1) * g, E.num(2) / 3)
        * E.gamma((t3(-p) * a - 4) / 6) * E.gamma((t3(-p) * a - 2) / 6)
    )
    return E.pow(inner, 1 - t3(-p)) / E.pow(g, E.num(2) / 3)


def _gp_ss1b_rhs(E, P):
    a, n = E.num(P["a"]), P["n"]
    t3 = E.t3
    expo3 = (
        E.num(1) / 16 * E.num(9) ** (-n)
        * (4 * t3(n) * (2 * (5 * t3(n) - 2) * n - 9 * (t3(n) - 1)) - 3 * a * (-4 * t3(n) + 9**n + 3))
        - E.num(n * (n + 1)) / 3
    )
    return (
        E.pow(2, E.num(3) / 2 * (2 * n + t3(1 - n) - 3)) * E.pow(E.pi, E.num(3) / 2 * (t3(-n) - 1) + n)
        * E.pow(3, expo3) * E.pow(a, E.num(2 * n) / 3) * E.pow(a * E.gamma(t3(-n) * a / 2), t3(-n) - 1)
    )


_identity("GP-SS1-B", "Finite product of gamma quotients, second secant-sine form, second kind",
          "second secant-sine table, second gamma-quotient product", Tier.PRODUCT,
          (ParamSpec("a", "real, (4.5, 20)"), N_PARAM), _finite_prod(_gp_ss1b_factor), _gp_ss1b_rhs,
          _sample_a(4.5, 20.0))


def _ch_a_factor(E, P, p):
    m, r = P["m"], P["r"]
    t3 = E.t3
    base = (-1 + 2 * E.cosh(2 * t3(p) * m)) * (E.cosh(t3(p) * r) / E.cosh(t3(p) * m)) ** 2 \
        / (-1 + 2 * E.cosh(2 * t3(p) * r))
    return E.pow(base, t3(1 - 2 * p) * (t3(p) - 1)) * E.pow(
        E.cosh(t3(p + 1) * m) / E.cosh(t3(p + 1) * r), 2 * t3(-2 * p)
    )


def _ch_a_rhs(E, P):
    m, r, n = P["m"], P["r"], P["n"]
    return E.pow(E.cosh(E.t3(n) * m) / E.cosh(E.t3(n) * r), E.num(9) ** (1 - n) * (E.t3(n) - 1))


_identity("CH-SS1-A", "Finite product of hyperbolic cosine quotients in m and r",
          "second secant-sine table, cosh-quotient product in m and r", Tier.PRODUCT,
          (ParamSpec("m", "real, (-2, 2)"), ParamSpec("r", "real, (-2, 2)"), N_PARAM),
          _finite_prod(_ch_a_factor), _ch_a_rhs, _sample_pair(-2.0, 2.0))


def _ch_b_factor(E, P, p):
    x = P["x"]
    t3 = E.t3
    q = (1 - 2 * E.cosh(2 * t3(p) * x)) / (1 - 2 * E.cosh(2 * t3(p - 1) * x))
    c = E.cosh(t3(p - 1) * x) / E.cosh(t3(p) * x)
    return E.pow(q, E.num(9) ** (-p) * (t3(p + 1) - 1) / 2) * E.pow(c, E.num(9) ** (-p) * (t3(p + 1) - 4))


def _ch_b_rhs(E, P):
    x, n = P["x"], P["n"]
    return E.pow(E.cosh(E.t3(n) * x) / E.cosh(E.t3(n - 1) * x), E.num(9) ** (1 - n) * (E.t3(n) - 1) / 2)


_identity("CH-SS1-B", "Finite product of hyperbolic cosine quotients in x",
          "second secant-sine table, cosh-quotient product in x", Tier.PRODUCT,
          (ParamSpec("x", "real, (0.05, 2)"), N_PARAM), _finite_prod(_ch_b_factor), _ch_b_rhs,
          _sample_pair(0.05, 2.0, names=("x",)))


def _poly_factor(E, P, p):
    z = E.num(P["z"])
    zp = E.pow(z, E.t3(p))
    zq = E.pow(z, E.t3(p - 1))
    root = E.sqrt((zq - 1) * zq + 1) / (zq + 1)
    return E.pow(zp + 1, E.t3(-2 * p - 1)) * E.pow(root, E.t3(-2 * p) * (E.t3(p) - 1))


def _poly_exponent(E, n):
    return E.t3(1 - 2 * n) * (E.t3(n) - 1) / 2


def _poly_rhs(E, P):
    z, n = E.num(P["z"]), P["n"]
    return E.pow(E.pow(z, E.t3(n - 1)) + 1, _poly_exponent(E, n))


Z_PARAM = ParamSpec("z", "complex, 0.05 < |z| < 0.95")
_identity("POLY", "Finite product of polynomial roots", "second secant-sine table, polynomial product",
          Tier.PRODUCT, (Z_PARAM, N_PARAM), _finite_prod(_poly_factor), _poly_rhs, _sample_z(0.95))
_infinite("POLY-INF", "Infinite product of polynomial roots", "second secant-sine table, polynomial limit",
          (Z_PARAM,), _poly_factor, lambda E, P: E.num(1), _sample_z(0.95, with_n=False), rate=1 / 3)


BINOMIAL_MAX_TERMS = 5000


def _binomial_series(E, c, power):
    limit = E.mp.mpf(10) ** E.ctx.working_digits

    def term(j):
        t = E.mp.binomial(c, j) * power(j)
        if abs(t) > limit:
            raise ConvergenceError(f"binomial series terms grow without bound (term {j})")
        return t

    return sum_series(term, E.ctx, max_terms=BINOMIAL_MAX_TERMS).unwrap("binomial series")


def _poly_binom_printed(E, P):
    z, n = E.num(P["z"]), P["n"]
    c = _poly_exponent(E, n)
    w = E.pow(z, E.t3(n - 1))
    return _binomial_series(E, c, lambda j: E.pow(w, c - j))


def _poly_binom_ascending(E, P):
    z, n = E.num(P["z"]), P["n"]
    c = _poly_exponent(E, n)
    w = E.pow(z, E.t3(n - 1))
    return _binomial_series(E, c, lambda j: w**j)


_identity(
    "POLY-BINOM", "Binomial-series form of the polynomial product", "second secant-sine table, binomial restatement",
    Tier.PRODUCT, (Z_PARAM, N_PARAM), _poly_rhs, _poly_binom_printed, _sample_z(0.95),
    alternates=(Reading("ascending-powers", "binomial series in ascending powers w^p",
                        _poly_rhs, _poly_binom_ascending),),
)

# -- constants from the second secant-sine theorem --------------------------


def _cat_ss1a_term(E, P, p):
    n = P["n"]
    t3, f = E.t3, E.psi1
    h = E.num(3) / 2 * (t3(p) - 1)
    return E.num(27) ** (-p) * (
        f(1 - t3(n - p - 1) / 4)
        + h * (f(E.num(5) / 6 - t3(n - p - 1) / 4) - f((4 - t3(n - p)) / 12))
        - f((6 - t3(n - p)) / 12)
        + h * (f((2 - t3(n - p)) / 12) - f((8 - t3(n - p)) / 12))
    )


_identity("CAT-SS1-A", "Trigamma sum giving Catalan's constant, second secant-sine form",
          "second secant-sine table, first Catalan series", Tier.CONSTANT, N_ONLY,
          _finite_sum(_cat_ss1a_term),
          lambda E, P: -8 * E.C * E.t3(3 - 3 * P["n"]) * (E.t3(P["n"]) - 1), sample_n_only)


def _cat_ss1b_term(E, P, p):
    n = P["n"]
    t3 = E.t3
    return (
        12 * E.dphi(-1, -1, 1 - t3(n - p - 1) / 2)
        - 18 * (t3(p) - 1) * E.dphi(-1, -1, (2 - t3(n - p)) / 6)
        + 18 * (t3(p) - 1) * E.dphi(-1, -1, (4 - t3(n - p)) / 6)
        + t3(-p) * (t3(n) - t3(2 * p + 1)) * _log_i3(E, p + 1)
    )


_identity("CAT-SS1-B", "Lerch-derivative sum giving Catalan's constant, second secant-sine form",
          "second secant-sine table, second Catalan series", Tier.CONSTANT, N_ONLY,
          _finite_sum(_cat_ss1b_term),
          lambda E, P: 6 * E.C * (E.t3(P["n"]) - 1) / E.pi, sample_n_only)


def _gk_ss1_term(E, P, p):
    t3 = E.t3
    diff = E.dphi(-1, -1, E.num(1) / 3) - E.dphi(-1, -1, E.num(2) / 3)
    return 6 * (t3(p) - 1) * diff + t3(p) * _log_i3(E, p + 1)


def _gk_ss1_rhs(E, P):
    n = P["n"]
    t3 = E.t3
    return ((-2 * n + t3(n) - 1) * E.log(16 * E.exp(3) / E.A**36) + 3 * (t3(n) - 1) * _log_i3(E, n)) / 6


_identity("GK-SS1", "Lerch-derivative sum giving Glaisher's constant, second secant-sine form",
          "second secant-sine table, Glaisher-Kinkelin series", Tier.CONSTANT, N_ONLY,
          _finite_sum(_gk_ss1_term), _gk_ss1_rhs, sample_n_only)


def _ap_ss1_term(E, P, p):
    t3 = E.t3
    return t3(p) * (t3(p) - 1) * (E.dphi(-1, -2, E.num(1) / 3) - E.dphi(-1, -2, E.num(2) / 3))


_identity("AP-SS1", "Lerch-derivative sum giving Apery's constant, second secant-sine form",
          "second secant-sine table, Apery series", Tier.CONSTANT, N_ONLY,
          _finite_sum(_ap_ss1_term),
          lambda E, P: -7 * (-4 * E.t3(P["n"]) + 9 ** P["n"] + 3) * E.zeta3 / (36 * E.pi**2),
          sample_n_only)
