"""Verification reports in JSON, Markdown and CSV.

Per-identity outcomes are first reduced to plain records (strings, ints
and lists) by :func:`summarize`.  Records are picklable, so worker
processes can return them, and they render deterministically: every
extended-precision number is printed with ``mpmath.nstr`` at a fixed number
of digits and wall-clock timings are kept out of the JSON document.
"""

from __future__ import annotations

import csv
import io
import json
import platform
from pathlib import Path
from typing import Iterable, Mapping

import mpmath

from . import __version__
from .identities import IdentityOutcome, Verdict
from .identities.core import format_param
from .mpcore import PrecisionContext

SCHEMA_VERSION = 1
RESIDUAL_DIGITS = 6
FORMATS = ("json", "markdown", "csv")
FILENAMES = {"json": "report.json", "markdown": "report.md", "csv": "report.csv"}

CSV_COLUMNS = (
    "identity", "sample", "params", "verdict", "reading", "digits",
    "lhs", "rhs", "abs_residual", "rel_residual", "tail_bound", "notes",
)


def format_value(x, digits: int, mp=mpmath.mp) -> str | None:
    """Deterministic text form of an mpf/mpc value (``None`` stays ``None``)."""
    if x is None:
        return None
    x = mp.convert(x)
    if isinstance(x, mp.mpc):
        re, im = mp.nstr(x.real, digits), mp.nstr(abs(x.imag), digits)
        sign = "-" if x.imag < 0 else "+"
        return f"{re}{sign}{im}j"
    return mp.nstr(x, digits)


def _params(values: Mapping) -> dict:
    return {k: v if isinstance(v, int) else format_param(v) for k, v in values.items()}


def summarize(outcome: IdentityOutcome, ctx: PrecisionContext) -> dict:
    """Reduce an outcome to a plain, deterministic record."""
    mp = ctx.mp
    ident = outcome.identity
    checks = []
    for r in outcome.results:
        checks.append({
            "identity": ident.id,
            "sample": r.sample.index,
            "params": _params(r.sample.values),
            "verdict": r.verdict.value,
            "reading": r.reading,
            "digits": r.digits,
            "lhs": format_value(r.lhs_value, ctx.digits, mp),
            "rhs": format_value(r.rhs_value, ctx.digits, mp),
            "abs_residual": format_value(r.abs_residual, RESIDUAL_DIGITS, mp),
            "rel_residual": format_value(r.rel_residual, RESIDUAL_DIGITS, mp),
            "tail_bound": format_value(r.tail_bound, RESIDUAL_DIGITS, mp),
            "notes": r.route_notes,
        })
    worst = outcome.worst_residual(ctx)
    return {
        "id": ident.id,
        "title": ident.title,
        "tier": ident.tier.value,
        "anchor": ident.anchor,
        "kind": ident.kind.value,
        "status": outcome.status.value,
        "counts": {v.value: outcome.count(v) for v in Verdict},
        "worst_rel_residual": format_value(worst, RESIDUAL_DIGITS, mp),
        "alternates": [
            {"name": a.name, "description": a.description, "held": a.held, "total": a.total}
            for a in outcome.alternates
        ],
        "notes": ident.notes,
        "checks": checks,
    }


def stamp() -> dict:
    return {
        "lerchkit": __version__,
        "mpmath": mpmath.__version__,
        "python": platform.python_version(),
    }


def assemble(config: Mapping, records: Iterable[dict]) -> dict:
    """Build the full report document from per-identity records."""
    records = list(records)
    totals = {v.value: 0 for v in Verdict}
    for rec in records:
        for k, n in rec["counts"].items():
            totals[k] += n
    totals["checks"] = sum(len(rec["checks"]) for rec in records)
    totals["identities"] = len(records)
    summaries = [{k: v for k, v in rec.items() if k != "checks"} for rec in records]
    return {
        "schema": SCHEMA_VERSION,
        "version": stamp(),
        "config": dict(config),
        "totals": totals,
        "identities": summaries,
        "checks": [c for rec in records for c in rec["checks"]],
    }


def failing(report: Mapping) -> list[str]:
    """Ids whose status is a failure (fails, eval-error or non-converged)."""
    return [s["id"] for s in report["identities"] if Verdict(s["status"]).is_failure]


def discrepancies(report: Mapping) -> list[str]:
    return [s["id"] for s in report["identities"] if s["status"] == Verdict.DISCREPANCY.value]


# -- renderers --------------------------------------------------------------


def to_json(report: Mapping) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _md_cell(text) -> str:
    return str(text).replace("|", "\\|").replace("\n", " ")


def to_markdown(report: Mapping, timings: Mapping[str, float] | None = None) -> str:
    timings = timings or {}
    cfg = report["config"]
    ver = report["version"]
    lines = [
        "# Identity verification report",
        "",
        f"lerchkit {ver['lerchkit']}, mpmath {ver['mpmath']}, Python {ver['python']}",
        "",
        "Configuration: " + ", ".join(f"{k}={_md_cell(v)}" for k, v in cfg.items()),
        "",
        "| Identity | Title | Tier | Anchor | Checks | Holds | Fails | Discrepancy | Errors "
        "| Worst rel. residual | Status | Time (s) |",
        "|---|---|---|---|---:|---:|---:|---:|---:|---|---|---:|",
    ]
    for s in report["identities"]:
        c = s["counts"]
        errors = c[Verdict.EVAL_ERROR.value] + c[Verdict.NON_CONVERGED.value]
        elapsed = timings.get(s["id"])
        lines.append(
            "| " + " | ".join(_md_cell(x) for x in (
                s["id"], s["title"], s["tier"], s["anchor"], sum(c.values()),
                c[Verdict.HOLDS.value], c[Verdict.FAILS.value], c[Verdict.DISCREPANCY.value],
                errors, s["worst_rel_residual"] or "n/a", s["status"],
                f"{elapsed:.2f}" if elapsed is not None else "n/a",
            )) + " |"
        )
    t = report["totals"]
    lines += [
        "",
        f"Totals: {t['identities']} identities, {t['checks']} checks, "
        + ", ".join(f"{v.value} {t[v.value]}" for v in Verdict),
    ]
    flagged = [s for s in report["identities"] if s["status"] == Verdict.DISCREPANCY.value]
    if flagged:
        lines += ["", "## Suspected discrepancies", ""]
        for s in flagged:
            lines.append(f"### {s['id']}: {s['title']}")
            lines.append("")
            if not s["alternates"]:
                lines.append("No alternate reading is registered.")
            for a in s["alternates"]:
                lines.append(f"- alternate `{a['name']}` ({a['description']}): "
                             f"holds on {a['held']} of {a['total']} samples")
            lines.append("")
    failed = failing(report)
    if failed:
        lines += ["", "## Failing identities", ""] + [f"- {i}" for i in failed]
    return "\n".join(lines).rstrip("\n") + "\n"


def to_csv(report: Mapping) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    for c in report["checks"]:
        row = dict(c)
        row["params"] = "; ".join(f"{k}={v}" for k, v in c["params"].items())
        writer.writerow({k: "" if row[k] is None else row[k] for k in CSV_COLUMNS})
    return buf.getvalue()


def write_reports(report: Mapping, out_dir, formats: Iterable[str],
                  timings: Mapping[str, float] | None = None) -> list[Path]:
    """Write the requested formats into ``out_dir``; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    renderers = {
        "json": lambda: to_json(report),
        "markdown": lambda: to_markdown(report, timings),
        "csv": lambda: to_csv(report),
    }
    written = []
    for fmt in formats:
        if fmt not in renderers:
            raise ValueError(f"unknown report format {fmt!r}")
        path = out / FILENAMES[fmt]
        path.write_text(renderers[fmt](), encoding="utf-8", newline="")
        written.append(path)
    return written
