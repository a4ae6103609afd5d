"""Identity records, sampling, and the residual checker."""

from __future__ import annotations

import enum
import fnmatch
import random
import time
import zlib
from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..mpcore import ConvergenceError, DomainError, PrecisionContext
from .env import Env

Formula = Callable[[Env, Mapping], object]


class Tier(str, enum.Enum):
    CORE = "core"
    PRODUCT = "product"
    CONSTANT = "constant"
    FUNCTIONAL = "functional"
    LIMIT = "limit"

    def __str__(self) -> str:
        return self.value


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    DISCREPANCY = "suspected-paper-discrepancy"
    EVAL_ERROR = "eval-error"
    NON_CONVERGED = "non-converged"

    def __str__(self) -> str:
        return self.value

    @property
    def is_failure(self) -> bool:
        return self in (Verdict.FAILS, Verdict.EVAL_ERROR, Verdict.NON_CONVERGED)


class Kind(str, enum.Enum):
    EQUALITY = "equality"
    INFINITE = "infinite"
    BOUND = "bound"


@dataclass(frozen=True)
class ParamSpec:
    name: str
    domain: str


@dataclass(frozen=True)
class Reading:
    """An alternative transcription of an identity, tried when it fails."""

    name: str
    description: str
    lhs: Formula
    rhs: Formula


Sampler = Callable[[random.Random, int, tuple], dict]


@dataclass(frozen=True)
class Identity:
    id: str
    title: str
    anchor: str
    tier: Tier
    params: tuple
    lhs: Formula
    rhs: Formula
    sampler: Sampler
    kind: Kind = Kind.EQUALITY
    # Infinite products: factor(env, params, p) and the geometric rate of the tail.
    factor: Callable | None = None
    rate: float | None = None
    alternates: tuple = ()
    notes: str = ""

    def __post_init__(self) -> None:
        if not self.anchor:
            raise ValueError(f"{self.id}: anchor must be non-empty")


@dataclass(frozen=True)
class ParamSample:
    values: dict
    seed: int
    index: int = 0

    def describe(self) -> str:
        return ", ".join(f"{k}={format_param(v)}" for k, v in self.values.items())


def format_param(v) -> str:
    if isinstance(v, complex):
        return f"{v.real!r}{v.imag:+}j"
    return repr(v)


@dataclass
class CheckResult:
    identity_id: str
    sample: ParamSample
    lhs_value: object
    rhs_value: object
    abs_residual: object
    rel_residual: object
    verdict: Verdict
    route_notes: str = ""
    digits: int = 0
    reading: str = "as-registered"
    tail_bound: object = None


# -- registry ---------------------------------------------------------------

_REGISTRY: dict[str, Identity] = {}


def register(identity: Identity) -> Identity:
    if identity.id in _REGISTRY:
        raise ValueError(f"duplicate identity id {identity.id}")
    _REGISTRY[identity.id] = identity
    return identity


def _load() -> None:
    from . import catalog  # noqa: F401  (populates the registry on import)


def registry() -> list[Identity]:
    _load()
    return list(_REGISTRY.values())


def lookup(identity_id: str) -> Identity | None:
    _load()
    return _REGISTRY.get(identity_id)


def select(patterns) -> list[Identity]:
    """Identities whose id matches any of the glob ``patterns`` (registry order)."""
    if isinstance(patterns, str):
        patterns = [patterns]
    pats = [p.strip() for p in patterns if p.strip()] or ["*"]
    return [i for i in registry() if any(fnmatch.fnmatchcase(i.id, p) for p in pats)]


def _get(identity_id) -> Identity:
    if isinstance(identity_id, Identity):
        return identity_id
    ident = lookup(identity_id)
    if ident is None:
        raise KeyError(f"unknown identity {identity_id!r}")
    return ident


# -- sampling ---------------------------------------------------------------

DEFAULT_N_RANGE = (1, 6)


def sample_domain(identity_id, count: int, seed: int, n_range: tuple | None = None) -> list[ParamSample]:
    """Deterministic samples for an identity.

    ``n_range`` (inclusive bounds) overrides the default range of ``n``
    for identities that have one.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    n_range = n_range or DEFAULT_N_RANGE
    if not 1 <= n_range[0] <= n_range[1]:
        raise ValueError(f"n_range must satisfy 1 <= lo <= hi, got {n_range}")
    ident = _get(identity_id)
    rng = random.Random(seed + zlib.crc32(ident.id.encode()))
    names = {p.name for p in ident.params}
    if not names:
        return [ParamSample({}, seed, 0)]
    out = []
    for i in range(count):
        values = ident.sampler(rng, i, tuple(n_range))
        out.append(ParamSample(values, seed, i))
    return out


# -- residuals --------------------------------------------------------------


def residuals(lhs, rhs, ctx: PrecisionContext):
    """Absolute and componentwise relative residual."""
    mp = ctx.mp
    lhs = mp.convert(lhs)
    rhs = mp.convert(rhs)
    diff = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs), mp.one)
    floor = mp.mpf("1e-10") * scale
    rel = mp.zero
    for part in (mp.re, mp.im):
        l, r = part(lhs), part(rhs)
        den = max(abs(l), abs(r), floor)
        rel = max(rel, abs(l - r) / den)
    return diff, rel


def _holds(lhs, rhs, diff, rel, tol, ctx: PrecisionContext) -> bool:
    mp = ctx.mp
    if rel <= tol:
        return True
    tiny = mp.mpf(10) ** (-(ctx.digits // 2))
    return abs(lhs) < tiny and abs(rhs) < tiny and diff <= tol


def check_tolerance(tol: float, ctx: PrecisionContext) -> None:
    floor = 10.0 ** (-ctx.digits + 10)
    if tol < floor * (1 - 1e-9):
        raise ValueError(f"tolerance {tol:g} is below the precision floor {floor:g}")


def eval_side(identity_id, side: str, sample: ParamSample, ctx: PrecisionContext,
              reading: Reading | None = None, env: Env | None = None):
    """Evaluate one side of an identity at a sample."""
    ident = _get(identity_id)
    env = env or Env(ctx)
    source = reading or ident
    values = working_values(sample.values, ctx)
    if side == "lhs":
        return source.lhs(env, values)
    if side == "rhs":
        return source.rhs(env, values)
    raise ValueError("side must be 'lhs' or 'rhs'")


def working_values(values: Mapping, ctx: PrecisionContext) -> dict:
    """Lift float and complex parameters to working precision; ints stay exact."""
    mp = ctx.mp
    return {k: v if isinstance(v, int) else mp.convert(v) for k, v in values.items()}


def _error_result(ident, sample, ctx, exc, reading) -> CheckResult:
    mp = ctx.mp
    verdict = Verdict.FAILS if isinstance(exc, ConvergenceError) else Verdict.EVAL_ERROR
    return CheckResult(ident.id, sample, None, None, mp.inf, mp.inf, verdict,
                       f"{type(exc).__name__}: {exc}", ctx.digits, reading)


_EVAL_ERRORS = (DomainError, ConvergenceError, ZeroDivisionError, ValueError, OverflowError)


def _check_once(ident: Identity, sample, tol, ctx, reading: Reading | None) -> CheckResult:
    label = reading.name if reading else "as-registered"
    env = Env(ctx)
    try:
        if ident.kind is Kind.BOUND:
            return _check_bound(ident, sample, ctx, env, label)
        lhs = eval_side(ident, "lhs", sample, ctx, reading, env)
        rhs = eval_side(ident, "rhs", sample, ctx, reading, env)
    except _EVAL_ERRORS as exc:
        return _error_result(ident, sample, ctx, exc, label)
    mp = ctx.mp
    lhs, rhs = mp.convert(lhs), mp.convert(rhs)
    if not (mp.isfinite(lhs) and mp.isfinite(rhs)):
        return CheckResult(ident.id, sample, lhs, rhs, mp.inf, mp.inf, Verdict.EVAL_ERROR,
                           "non-finite side", ctx.digits, label)
    diff, rel = residuals(lhs, rhs, ctx)
    verdict = Verdict.HOLDS if _holds(lhs, rhs, diff, rel, tol, ctx) else Verdict.FAILS
    return CheckResult(ident.id, sample, lhs, rhs, diff, rel, verdict,
                       env.route_notes(), ctx.digits, label)


def _check_bound(ident: Identity, sample, ctx, env: Env, label: str) -> CheckResult:
    # lhs(env, values) yields the partial products to compare; rhs is the bound.
    mp = ctx.mp
    values = working_values(sample.values, ctx)
    partials = [mp.convert(v) for v in ident.lhs(env, values)]
    bound = mp.convert(ident.rhs(env, values))
    if any(mp.im(v) != 0 for v in partials + [bound]):
        raise DomainError("bound comparison needs real values")
    worst = max(partials)
    excess = max(mp.zero, worst - bound)
    verdict = Verdict.HOLDS if worst < bound else Verdict.FAILS
    note = f"max over {len(partials)} partial products; margin {mp.nstr(bound - worst, 5)}"
    return CheckResult(ident.id, sample, worst, bound, excess, excess / abs(bound),
                       verdict, note, ctx.digits, label)


def check(identity_id, sample: ParamSample, tol: float, ctx: PrecisionContext,
          *, reading: Reading | None = None, escalate: bool = True) -> CheckResult:
    """Check an identity at one sample.

    A failing check is repeated at ``digits + 20`` before it is reported as
    failing, so that loss of precision is not mistaken for a false identity.
    Infinite products are delegated to :func:`check_infinite`.
    """
    check_tolerance(tol, ctx)
    ident = _get(identity_id)
    if ident.kind is Kind.INFINITE and reading is None:
        return check_infinite(ident, sample, ctx=ctx, tol=tol)
    result = _check_once(ident, sample, tol, ctx, reading)
    if result.verdict is Verdict.HOLDS or not escalate:
        return result
    retry = _check_once(ident, sample, tol, ctx.escalated(20), reading)
    if retry.verdict is Verdict.HOLDS:
        retry.route_notes = (retry.route_notes + "; " if retry.route_notes else "") + \
            f"held only after escalating to {retry.digits} digits"
        return retry
    if result.verdict is Verdict.FAILS and retry.verdict is Verdict.FAILS:
        result.route_notes = (result.route_notes + "; " if result.route_notes else "") + \
            f"also fails at {retry.digits} digits (rel {ctx.mp.nstr(retry.rel_residual, 3)})"
    return result


TAIL_WINDOW = 3
TAIL_SAFETY = 10


def check_infinite(identity_id, sample: ParamSample, N: int = 12, *,
                   ctx: PrecisionContext, tol: float = 1e-40) -> CheckResult:
    """Compare the ``N``-factor partial product with its closed-form limit.

    With increments ``d_j = |P_{j+1} - P_j|`` the tail after ``N`` factors
    is extrapolated geometrically.  Factors such as ``cos(3**p m)``
    oscillate, so single increments are noisy and the estimate uses
    windows and an amplitude envelope:

    * ``W1`` and ``W0`` are the maxima of the last three increments and of
      the three before them (two each when ``N < 6``).  ``W1 >= W0`` means the tail estimate is not
      decreasing and the verdict is non-converged.
    * ``r = max(rate, (W1 / W0)**(1/window))`` is the per-factor ratio.
    * ``A = max d_j r**-j`` over the second half of the factors, and the
      bound is ``TAIL_SAFETY * A r**N / (1 - r) + tol |limit|``.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    window = min(TAIL_WINDOW, N // 2)
    ident = _get(identity_id)
    if ident.kind is not Kind.INFINITE:
        raise ValueError(f"{ident.id} is not an infinite product")
    mp = ctx.mp
    env = Env(ctx)
    values = working_values(sample.values, ctx)
    try:
        partials = [mp.one]
        for p in range(N):
            partials.append(partials[-1] * ident.factor(env, values, p))
        limit = mp.convert(ident.rhs(env, values))
    except _EVAL_ERRORS as exc:
        return _error_result(ident, sample, ctx, exc, "as-registered")
    p_n = partials[-1]
    d = [abs(partials[-k] - partials[-k - 1]) for k in range(1, 2 * window + 1)]
    w1, w0 = max(d[:window]), max(d[window:])
    diff, rel = residuals(p_n, limit, ctx)
    noise = ctx.working_eps * 100 * max(abs(p_n), mp.one)
    notes = env.route_notes()
    if w1 <= noise:
        bound = noise + mp.mpf(tol) * abs(limit)
        verdict = Verdict.HOLDS
    elif w1 >= w0:
        bound = mp.inf
        verdict = Verdict.NON_CONVERGED
        notes = "increments are not decreasing"
    else:
        r = max(mp.root(w1 / w0, window), mp.mpf(ident.rate))
        increments = [abs(partials[j + 1] - partials[j]) for j in range(N // 2, N)]
        amplitude = max(dj / r ** (N // 2 + i) for i, dj in enumerate(increments))
        bound = TAIL_SAFETY * amplitude * r**N / (1 - r) + mp.mpf(tol) * abs(limit)
        verdict = Verdict.HOLDS
    if verdict is Verdict.HOLDS and diff > bound:
        verdict = Verdict.FAILS
    return CheckResult(ident.id, sample, p_n, limit, diff, rel, verdict,
                       (notes + "; " if notes else "") + f"N={N}", ctx.digits,
                       "as-registered", bound)


# -- per-identity aggregation -----------------------------------------------

DISCREPANCY_MIN_FAILURES = 10


@dataclass
class AlternateOutcome:
    name: str
    description: str
    held: int
    total: int

    @property
    def holds(self) -> bool:
        return self.total > 0 and self.held == self.total


@dataclass
class IdentityOutcome:
    identity: Identity
    results: list
    status: Verdict
    alternates: list = field(default_factory=list)
    elapsed: float = 0.0

    def count(self, verdict: Verdict) -> int:
        return sum(1 for r in self.results if r.verdict is verdict)

    def worst_residual(self, ctx: PrecisionContext):
        finite = [r.rel_residual for r in self.results
                  if r.rel_residual is not None and ctx.mp.isfinite(r.rel_residual)]
        return max(finite) if finite else None


def verify_identity(identity_id, samples, tol: float, ctx: PrecisionContext) -> IdentityOutcome:
    """Check every sample, then apply the discrepancy protocol.

    If at least ``DISCREPANCY_MIN_FAILURES`` samples fail at both precision
    levels, the identity's alternate readings are checked on the same
    samples.  Core identities are only downgraded to a suspected
    discrepancy when some alternate reading holds everywhere; other tiers
    are downgraded regardless, with the alternates documented.
    """
    ident = _get(identity_id)
    start = time.perf_counter()
    results = [check(ident, s, tol, ctx) for s in samples]
    failed = [r for r in results if r.verdict is Verdict.FAILS]
    alternates = []
    status = _status(results)
    if len(failed) >= DISCREPANCY_MIN_FAILURES:
        for reading in ident.alternates:
            checks = [check(ident, s, tol, ctx, reading=reading) for s in samples]
            held = sum(1 for c in checks if c.verdict is Verdict.HOLDS)
            alternates.append(AlternateOutcome(reading.name, reading.description, held, len(checks)))
        rescued = [a for a in alternates if a.holds]
        if ident.tier is not Tier.CORE or rescued:
            status = Verdict.DISCREPANCY
            if rescued:
                note = f"alternate reading '{rescued[0].name}' holds on all samples"
            elif alternates:
                note = "no alternate reading holds on all samples"
            else:
                note = "no alternate reading registered"
            for r in failed:
                r.verdict = Verdict.DISCREPANCY
                r.route_notes = (r.route_notes + "; " if r.route_notes else "") + note
    return IdentityOutcome(ident, results, status, alternates, time.perf_counter() - start)


def _status(results) -> Verdict:
    verdicts = {r.verdict for r in results}
    for v in (Verdict.FAILS, Verdict.NON_CONVERGED, Verdict.EVAL_ERROR):
        if v in verdicts:
            return v
    return Verdict.HOLDS
