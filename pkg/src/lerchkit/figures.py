"""Curve data for the plotted functions, written as CSV.

Nothing is rendered here; each figure is sampled on a line or on a
rectangular grid in the complex plane and emitted as rows of
``re``/``im``/``abs`` values ready for any external plotting tool.
Abscissae where a denominator nearly vanishes are emitted as gap rows
with empty value columns and ``gap=1``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .mpcore import PrecisionContext

FIGURE_DIGITS = 20
# Relative size below which a denominator is treated as a pole.
GAP_THRESHOLD = 0.02


class Gap(Exception):
    """Raised by a figure function at a singular abscissa."""


def _nonzero(value, mp):
    if abs(value) < GAP_THRESHOLD:
        raise Gap
    return value


@dataclass(frozen=True)
class Figure:
    id: str
    description: str
    plane: str  # "real" or "complex"
    func: Callable
    default_range: tuple
    default_points: int
    default_imag_range: tuple | None = None
    params: Mapping = field(default_factory=dict)


def _cos_sec_recip(mp, m, P):
    if abs(m) < GAP_THRESHOLD:
        raise Gap
    return mp.cos(m) / _nonzero(mp.cos(1 / m), mp)


def _tanh_coth_recip(mp, r, P):
    if abs(r) < GAP_THRESHOLD:
        raise Gap
    return mp.tanh(r) ** 3 / _nonzero(mp.tanh(1 / r), mp) ** 3


def _tan_cot_power(mp, x, P):
    n = int(P["n"])
    y = mp.mpf(3) ** (n - 1) * x / 2
    base = mp.sin(y) / _nonzero(mp.cos(y), mp) * mp.cos(3 * y) / _nonzero(mp.sin(3 * y), mp)
    if base == 0:
        raise Gap
    return mp.power(base, mp.mpf(3) ** -n)


def _cos_ratio_power(mp, m, P):
    n = int(P["n"])
    t = mp.mpf(3) ** n
    base = mp.cos(t * mp.mpf(P["r"])) / _nonzero(mp.cos(t * m), mp)
    return mp.power(base, 2 * mp.mpf(3) ** (2 - 2 * n))


def _qg_cc1_rhs(mp, a, P):
    n = int(P["n"])
    b = mp.mpf(3) ** -n * a
    sign = (-1) ** n
    for arg in ((a + 1) / 4, (b + 3) / 4):
        if mp.re(arg) <= 0 and abs(arg - mp.nint(mp.re(arg))) < GAP_THRESHOLD:
            raise Gap
    ratio = mp.gamma((b + 1) / 4) / mp.gamma((b + 3) / 4)
    return mp.mpf(3) ** (mp.mpf(sign - 1) / 4) * mp.gamma((a + 3) / 4) * ratio**sign / mp.gamma((a + 1) / 4)


def _poly_power(mp, z, P):
    n = int(P["n"])
    w = mp.power(z, mp.mpf(3) ** (n - 1)) if z != 0 else mp.zero
    c = mp.mpf(3) ** (1 - 2 * n) * (mp.mpf(3) ** n - 1) / 2
    base = _nonzero(w + 1, mp)
    return mp.power(base, c)


FIGURES = {
    f.id: f
    for f in (
        Figure("cos-sec-recip", "cos(m) sec(1/m) for real m", "real", _cos_sec_recip, (0.2, 3.0), 200),
        Figure("cos-sec-recip-complex", "cos(m) sec(1/m) on a complex grid", "complex", _cos_sec_recip,
               (0.2, 3.0), 41, (-1.0, 1.0)),
        Figure("tanh-coth-recip", "tanh(r)^3 coth(1/r)^3 for real r", "real", _tanh_coth_recip, (-3.0, 3.0), 200),
        Figure("tanh-coth-recip-complex", "tanh(r)^3 coth(1/r)^3 on a complex grid", "complex",
               _tanh_coth_recip, (-2.0, 2.0), 41, (-2.0, 2.0)),
        Figure("tan-cot-power", "(tan(3^(n-1) x / 2) cot(3^n x / 2))^(3^-n) for real x", "real",
               _tan_cot_power, (0.0, 1.0), 200, params={"n": 4}),
        Figure("cos-ratio-power", "(sec(3^n m) cos(3^n r))^(2 3^(2-2n)) for real m at fixed r", "real",
               _cos_ratio_power, (-1.5, 1.5), 200, params={"n": 2, "r": 0.5}),
        Figure("qg-cc1-rhs", "closed form of the alternating gamma product as a function of a", "real",
               _qg_cc1_rhs, (0.1, 10.0), 200, params={"n": 3}),
        Figure("poly-power-complex", "(z^(3^(n-1)) + 1)^(3^(1-2n) (3^n - 1) / 2) on a complex grid",
               "complex", _poly_power, (-1.5, 1.5), 41, (-1.5, 1.5), params={"n": 2}),
    )
}


def lookup_figure(figure_id: str) -> Figure:
    try:
        return FIGURES[figure_id]
    except KeyError:
        raise KeyError(f"unknown figure {figure_id!r}; known: {', '.join(FIGURES)}") from None


def _grid(lo: float, hi: float, points: int) -> list:
    if points < 2:
        raise ValueError("points must be >= 2")
    if not lo < hi:
        raise ValueError(f"range must satisfy lo < hi, got [{lo}, {hi}]")
    step = (hi - lo) / (points - 1)
    return [lo + i * step for i in range(points)]


def figure_rows(figure_id: str, lo: float | None = None, hi: float | None = None,
                points: int | None = None, *, imag_range: tuple | None = None,
                params: Mapping | None = None) -> tuple[list[str], list[list]]:
    """Sample a figure; returns the CSV header and rows.

    Real-line figures have columns ``x, re, im, abs, gap``; complex-plane
    figures ``x_re, x_im, re, im, abs, gap`` with ``points`` samples per
    axis.
    """
    fig = lookup_figure(figure_id)
    lo = fig.default_range[0] if lo is None else lo
    hi = fig.default_range[1] if hi is None else hi
    points = points or fig.default_points
    merged = dict(fig.params)
    for k, v in (params or {}).items():
        if k not in merged:
            raise ValueError(f"figure {figure_id} has no parameter {k!r}")
        merged[k] = v
    mp = PrecisionContext(FIGURE_DIGITS).mp
    xs = _grid(lo, hi, points)
    if fig.plane == "real":
        header = ["x", "re", "im", "abs", "gap"]
        abscissae = [((x,), mp.mpf(x)) for x in xs]
    else:
        ilo, ihi = imag_range or fig.default_imag_range
        ys = _grid(ilo, ihi, points)
        header = ["x_re", "x_im", "re", "im", "abs", "gap"]
        abscissae = [((x, y), mp.mpc(x, y)) for y in ys for x in xs]
    rows = []
    for coords, arg in abscissae:
        try:
            v = mp.convert(fig.func(mp, arg, merged))
        except (Gap, ZeroDivisionError):
            rows.append([*coords, "", "", "", 1])
            continue
        rows.append([*coords, _num(mp.re(v)), _num(mp.im(v)), _num(abs(v)), 0])
    return header, rows


def _num(x) -> str:
    return repr(float(x))


def figure_csv(figure_id: str, *args, **kwargs) -> str:
    header, rows = figure_rows(figure_id, *args, **kwargs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
