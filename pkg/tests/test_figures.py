import csv
import io
import statistics

import pytest

from lerchkit import cli
from lerchkit.figures import FIGURES, figure_csv, figure_rows, lookup_figure


def test_cos_sec_recip_has_gap():
    header, rows = figure_rows("cos-sec-recip")
    assert header == ["x", "re", "im", "abs", "gap"]
    assert len(rows) == 200
    gaps = [r for r in rows if r[-1] == 1]
    assert gaps
    # cos(1/m) vanishes at m = 2/pi
    assert all(abs(r[0] - 0.6366) < 0.02 for r in gaps)
    assert all(r[1] == "" for r in gaps)


def test_tan_cot_power_is_near_one():
    _, rows = figure_rows("tan-cot-power")
    values = [float(r[1]) for r in rows if r[-1] == 0]
    assert 0.99 < statistics.median(values) < 1.01
    assert all(0.9 < v < 1.1 for v in values)


def test_complex_grid_shape():
    header, rows = figure_rows("poly-power-complex", points=11)
    assert header[:2] == ["x_re", "x_im"]
    assert len(rows) == 121


@pytest.mark.parametrize("figure_id", sorted(FIGURES))
def test_every_figure_renders(figure_id):
    text = figure_csv(figure_id, points=9)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][-1] == "gap"
    assert any(r[-1] == "0" for r in rows[1:])


def test_parameters_and_errors():
    _, a = figure_rows("cos-ratio-power", points=5, params={"n": 1})
    _, b = figure_rows("cos-ratio-power", points=5, params={"n": 3})
    assert a != b
    with pytest.raises(ValueError):
        figure_rows("cos-ratio-power", params={"q": 1})
    with pytest.raises(ValueError):
        figure_rows("cos-sec-recip", 1.0, 0.5)
    with pytest.raises(ValueError):
        figure_rows("cos-sec-recip", points=1)
    with pytest.raises(KeyError):
        lookup_figure("nope")


def test_figure_cli(capsys, tmp_path):
    out = tmp_path / "fig.csv"
    assert cli.main(["figure", "cos-sec-recip", "--range", "0.5,1", "--points", "11", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 12
    assert cli.main(["figure", "nope"]) == cli.EXIT_USAGE
    assert cli.main(["figure", "cos-sec-recip", "--range", "1"]) == cli.EXIT_USAGE
    assert cli.main(["figure", "tan-cot-power", "--param", "n"]) == cli.EXIT_USAGE
    capsys.readouterr()
    assert cli.main(["figure", "tanh-coth-recip", "--points", "3"]) == 0
    assert capsys.readouterr().out.startswith("x,re,im,abs,gap")
