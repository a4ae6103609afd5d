"""Command-line front end.

``lerchkit list``, ``lerchkit check``, ``lerchkit eval`` and
``lerchkit figure``.  Exit codes: 0 success (suspected discrepancies
included), 1 failing checks, 2 usage errors, 3 I/O errors, 4 domain errors
in ``eval``.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from . import __version__, report
from .figures import FIGURES, figure_csv
from .identities import check_tolerance, sample_domain, select, verify_identity
from .mpcore import ConvergenceError, DomainError, PrecisionContext

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_DOMAIN = 0, 1, 2, 3, 4
OUT_ENV = "LERCHKIT_OUT"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    digits: int = 50
    tolerance: float = 1e-40
    samples: int = 25
    seed: int = 0
    only: tuple = ("*",)
    n_max: int = 6
    out: str = "lerchkit-report"
    formats: tuple = ("json", "markdown")
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise UsageError("samples must be >= 1")
        if self.jobs < 1:
            raise UsageError("jobs must be >= 1")
        if self.n_max < 1:
            raise UsageError("n-max must be >= 1")
        unknown = set(self.formats) - set(report.FORMATS)
        if unknown or not self.formats:
            raise UsageError(f"formats must be a non-empty subset of {', '.join(report.FORMATS)}")
        try:
            check_tolerance(self.tolerance, PrecisionContext(self.digits))
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def echo(self) -> dict:
        """Settings that determine report content (output location excluded)."""
        d = asdict(self)
        for k in ("out", "jobs", "formats"):
            d.pop(k)
        d["only"] = list(self.only)
        return d


# -- config handling --------------------------------------------------------

_KEY_ALIASES = {"tol": "tolerance", "format": "formats", "n-max": "n_max"}
_CONFIG_FIELDS = {f.name: f for f in fields(RunConfig)}


def _split(value: str) -> tuple:
    return tuple(x.strip() for x in value.split(",") if x.strip())


def _coerce(key: str, value: str):
    try:
        if key in ("digits", "samples", "seed", "n_max", "jobs"):
            return int(value)
        if key == "tolerance":
            return float(value)
    except ValueError:
        raise UsageError(f"invalid value for {key}: {value!r}") from None
    if key in ("only", "formats"):
        return _split(value)
    return value


def parse_config_text(text: str, source: str = "config") -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{source}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = _KEY_ALIASES.get(key, key.replace("-", "_"))
        if key not in _CONFIG_FIELDS:
            raise UsageError(f"{source}:{lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def resolve_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    """Defaults < config file < environment (output dir) < flags."""
    merged = {}
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read config file {args.config}: {exc.strerror or exc}") from exc
        merged.update(parse_config_text(text, args.config))
    if environ.get(OUT_ENV):
        merged["out"] = environ[OUT_ENV]
    flags = {
        "digits": args.digits, "tolerance": args.tol, "samples": args.samples,
        "seed": args.seed, "n_max": args.n_max, "out": args.out, "jobs": args.jobs,
        "only": tuple(p for item in args.only for p in _split(item)) if args.only else None,
        "formats": _split(args.format) if args.format else None,
    }
    merged.update({k: v for k, v in flags.items() if v is not None})
    return replace(RunConfig(), **merged) if merged else RunConfig()


# -- commands ---------------------------------------------------------------


def cmd_list(args) -> int:
    rows = [(i.id, i.tier.value, i.title, i.anchor) for i in select(args.patterns or ["*"])]
    header = ("ID", "TIER", "TITLE", "ANCHOR")
    widths = [max([len(header[c])] + [len(r[c]) for r in rows]) for c in range(3)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)) + "  " + header[3])
    for r in rows:
        print("  ".join(x.ljust(w) for x, w in zip(r, widths)) + "  " + r[3])
    return EXIT_OK


def _verify_worker(job):
    identity_id, cfg = job
    ctx = PrecisionContext(cfg.digits)
    samples = sample_domain(identity_id, cfg.samples, cfg.seed, (1, cfg.n_max))
    start = time.perf_counter()
    outcome = verify_identity(identity_id, samples, cfg.tolerance, ctx)
    return report.summarize(outcome, ctx), time.perf_counter() - start


def run_checks(cfg: RunConfig) -> tuple[dict, dict]:
    """Run every selected identity; returns the report and per-identity timings."""
    jobs = [(i.id, cfg) for i in select(cfg.only)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_verify_worker, jobs))
    else:
        results = [_verify_worker(j) for j in jobs]
    timings = {rec["id"]: t for rec, t in results}
    return report.assemble(cfg.echo(), [rec for rec, _ in results]), timings


def cmd_check(args) -> int:
    cfg = resolve_config(args)
    doc, timings = run_checks(cfg)
    for s in doc["identities"]:
        c = s["counts"]
        print(f"{s['id']:<14} {s['status']:<28} holds {c['holds']:>3}/{sum(c.values()):<3} "
              f"worst {s['worst_rel_residual'] or 'n/a':<10} {timings[s['id']]:7.2f}s")
    flagged = report.discrepancies(doc)
    if flagged:
        print("\nSUSPECTED DISCREPANCIES (exit status unaffected):")
        for s in doc["identities"]:
            if s["id"] in flagged:
                alts = "; ".join(f"{a['name']} holds {a['held']}/{a['total']}" for a in s["alternates"])
                print(f"  {s['id']}: {alts or 'no alternate reading registered'}")
    written = report.write_reports(doc, cfg.out, cfg.formats, timings)
    for path in written:
        print(f"wrote {path}")
    failed = report.failing(doc)
    if failed:
        print(f"\nFAILING: {', '.join(failed)}")
        return EXIT_FAIL
    return EXIT_OK


def parse_complex(text: str, ctx: PrecisionContext):
    """``"re,im"`` or ``"re"``, read as decimals at working precision.

    Going through binary doubles would move inputs such as ``0.6,0.8`` off
    the unit circle.
    """
    mp = ctx.mp
    parts = [p.strip() for p in text.split(",")]
    if len(parts) in (1, 2):
        try:
            for p in parts:
                float(p)
            vals = [mp.mpf(p) for p in parts]
        except ValueError:
            pass
        else:
            if not all(mp.isfinite(v) for v in vals):
                raise UsageError(f"{text!r} is not finite")
            return vals[0] if len(vals) == 1 else mp.mpc(*vals)
    raise UsageError(f"cannot parse {text!r}; expected re or re,im")


def _eval_phi(ctx, args, derivative):
    from .specfun import LerchArgs, lerch_phi, lerch_phi_sderiv, sderiv_method

    la = LerchArgs(*(parse_complex(a, ctx) for a in args))
    if derivative:
        return lerch_phi_sderiv(la, ctx), f"{sderiv_method(la, ctx)} (s-derivative)"
    value, route = lerch_phi(la, ctx)
    return value, route.value


def _eval_zeta(ctx, args, derivative):
    from .specfun import hurwitz_zeta, hurwitz_zeta_sderiv

    s, v = (parse_complex(a, ctx) for a in args)
    if ctx.mp.convert(s) == 1:
        raise DomainError("zeta(s, v) has a pole at s = 1")
    if derivative:
        return hurwitz_zeta_sderiv(s, v, ctx), "euler-maclaurin (s-derivative)"
    return hurwitz_zeta(s, v, ctx), "euler-maclaurin"


def _eval_polygamma(ctx, args, _):
    from .specfun import polygamma

    try:
        m = int(args[0])
    except ValueError:
        raise UsageError("polygamma order must be an integer") from None
    return polygamma(m, parse_complex(args[1], ctx), ctx), "asymptotic-recurrence"


def _eval_gamma(ctx, args, _):
    from .specfun import gamma

    return gamma(parse_complex(args[0], ctx), ctx), "stirling-recurrence"


def _eval_const(ctx, args, _):
    from .specfun.constants import apery_binomial, catalan_alternating, glaisher_zeta, pi_agm

    primary = {
        "pi": pi_agm,
        "catalan": catalan_alternating,
        "glaisher": glaisher_zeta,
        "apery": apery_binomial,
    }
    name = args[0].lower()
    if name not in primary:
        raise UsageError(f"unknown constant {name!r}; known: {', '.join(primary)}")
    fn = primary[name]
    return fn(ctx), fn.__name__.replace("_", "-")


EVAL_FUNCTIONS = {
    "phi": (3, lambda c, a: _eval_phi(c, a, False), "z s v"),
    "phiprime": (3, lambda c, a: _eval_phi(c, a, True), "z s v"),
    "zeta": (2, lambda c, a: _eval_zeta(c, a, False), "s v"),
    "zetaprime": (2, lambda c, a: _eval_zeta(c, a, True), "s v"),
    "polygamma": (2, lambda c, a: _eval_polygamma(c, a, None), "m z"),
    "gamma": (1, lambda c, a: _eval_gamma(c, a, None), "z"),
    "const": (1, lambda c, a: _eval_const(c, a, None), "name"),
}


def format_scalar(value, digits: int, mp) -> str:
    value = mp.convert(value)
    if isinstance(value, mp.mpc) and value.imag == 0:
        value = value.real
    return report.format_value(value, digits, mp)


def cmd_eval(args) -> int:
    arity, fn, usage = EVAL_FUNCTIONS[args.function]
    if len(args.args) != arity:
        raise UsageError(f"eval {args.function} takes {arity} argument(s): {usage}")
    if args.digits < 15:
        raise UsageError("digits must be >= 15")
    ctx = PrecisionContext(args.digits)
    try:
        value, route = fn(ctx, args.args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(format_scalar(value, args.digits, ctx.mp))
    print(f"route: {route}")
    return EXIT_OK


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"figure parameter {item!r} must be key=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise UsageError(f"figure parameter {k!r} needs a number") from None
    return out


def cmd_figure(args) -> int:
    if args.figure_id not in FIGURES:
        raise UsageError(f"unknown figure {args.figure_id!r}; known: {', '.join(FIGURES)}")
    lo = hi = None
    if args.range:
        lo, hi = _range(args.range)
    imag = _range(args.imag_range) if args.imag_range else None
    try:
        text = figure_csv(args.figure_id, lo, hi, args.points, imag_range=imag,
                          params=_parse_params(args.param))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8", newline="")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _range(text: str) -> tuple:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"range {text!r} must be lo,hi") from None
    return lo, hi


# -- parser -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lerchkit", description="Verify Lerch-function sum and product identities.")
    p.add_argument("--version", action="version", version=f"lerchkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ls = sub.add_parser("list", help="list registered identities")
    ls.add_argument("patterns", nargs="*", help="id globs, e.g. 'THM-*'")
    ls.set_defaults(func=cmd_list)

    ck = sub.add_parser("check", help="verify identities on sampled parameters")
    ck.add_argument("--digits", type=int)
    ck.add_argument("--tol", type=float, help="relative residual tolerance")
    ck.add_argument("--samples", type=int, help="samples per identity")
    ck.add_argument("--seed", type=int)
    ck.add_argument("--only", action="append", help="id glob(s), comma-separated or repeated")
    ck.add_argument("--n-max", type=int, dest="n_max", help="largest n sampled (n runs from 1)")
    ck.add_argument("--out", help=f"report directory (also ${OUT_ENV})")
    ck.add_argument("--format", help="comma-separated subset of json,markdown,csv")
    ck.add_argument("--jobs", type=int, help="identities checked in parallel")
    ck.add_argument("--config", help="flat key=value config file")
    ck.set_defaults(func=cmd_check)

    ev = sub.add_parser("eval", help="evaluate a special function")
    ev.add_argument("function", choices=sorted(EVAL_FUNCTIONS))
    ev.add_argument("args", nargs="*", help="arguments; complex values as re,im")
    ev.add_argument("--digits", type=int, default=50)
    ev.set_defaults(func=cmd_eval)

    fg = sub.add_parser("figure", help="write curve data for a figure as CSV")
    fg.add_argument("figure_id")
    fg.add_argument("--range", help="lo,hi for the real axis")
    fg.add_argument("--imag-range", dest="imag_range", help="lo,hi for the imaginary axis")
    fg.add_argument("--points", type=int)
    fg.add_argument("--param", action="append", help="figure parameter key=value")
    fg.add_argument("--out", help="CSV file (default: stdout)")
    fg.set_defaults(func=cmd_figure)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"lerchkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lerchkit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
