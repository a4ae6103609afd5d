import csv
import io
import json

import pytest

from lerchkit import report
from lerchkit.identities import sample_domain, verify_identity
from lerchkit.mpcore import PrecisionContext

CONFIG = {"digits": 30, "tolerance": 1e-20, "samples": 3, "seed": 0}


def _records(ids, samples=3):
    ctx = PrecisionContext(30)
    out = []
    for i in ids:
        outcome = verify_identity(i, sample_domain(i, samples, 0), 1e-20, ctx)
        out.append(report.summarize(outcome, ctx))
    return out


@pytest.fixture(scope="module")
def doc():
    return report.assemble(CONFIG, _records(["DEG-SS", "AP-SS", "GP-SS-INF"]))


def test_schema(doc):
    assert doc["schema"] == report.SCHEMA_VERSION
    assert set(doc) == {"schema", "version", "config", "totals", "identities", "checks"}
    assert set(doc["version"]) == {"lerchkit", "mpmath", "python"}
    assert doc["config"] == CONFIG
    ids = [s["id"] for s in doc["identities"]]
    assert ids == ["DEG-SS", "AP-SS", "GP-SS-INF"]
    for s in doc["identities"]:
        assert "checks" not in s
        assert s["anchor"] and s["tier"]


def test_totals(doc):
    t = doc["totals"]
    assert t["identities"] == 3
    assert t["checks"] == len(doc["checks"]) == 3 + 1 + 3
    assert t["holds"] == 7
    assert report.failing(doc) == []
    assert report.discrepancies(doc) == []


def test_checks_carry_values(doc):
    for c in doc["checks"]:
        assert c["verdict"] == "holds"
        assert c["lhs"] and c["rhs"]
        assert c["digits"] == 30
    inf = [c for c in doc["checks"] if c["identity"] == "GP-SS-INF"]
    assert all(c["tail_bound"] is not None for c in inf)


def test_json_roundtrip(doc):
    text = report.to_json(doc)
    assert json.loads(text) == json.loads(json.dumps(doc))
    assert text.endswith("\n")


def test_json_is_deterministic():
    a = report.to_json(report.assemble(CONFIG, _records(["THM-CC"], 4)))
    b = report.to_json(report.assemble(CONFIG, _records(["THM-CC"], 4)))
    assert a == b


def test_csv_parses(doc):
    rows = list(csv.DictReader(io.StringIO(report.to_csv(doc))))
    assert len(rows) == len(doc["checks"])
    assert tuple(rows[0]) == report.CSV_COLUMNS
    assert rows[0]["params"].startswith("m=")


def test_markdown_rows(doc):
    md = report.to_markdown(doc, {"DEG-SS": 0.5})
    table = [l for l in md.splitlines() if l.startswith("| ") and not l.startswith("| Identity")]
    assert [l.split("|")[1].strip() for l in table] == ["DEG-SS", "AP-SS", "GP-SS-INF"]
    assert "0.50" in table[0]
    assert "n/a" in table[1]


def test_markdown_lists_discrepancies():
    ctx = PrecisionContext(30)
    outcome = verify_identity("POLY-BINOM", sample_domain("POLY-BINOM", 10, 0), 1e-20, ctx)
    doc = report.assemble(CONFIG, [report.summarize(outcome, ctx)])
    md = report.to_markdown(doc)
    assert "## Suspected discrepancies" in md
    assert "ascending-powers" in md
    assert report.discrepancies(doc) == ["POLY-BINOM"]
    assert report.failing(doc) == []


def test_write_reports(tmp_path, doc):
    paths = report.write_reports(doc, tmp_path / "out", report.FORMATS)
    assert sorted(p.name for p in paths) == ["report.csv", "report.json", "report.md"]
    with pytest.raises(ValueError):
        report.write_reports(doc, tmp_path, ["pdf"])


def test_format_value(ctx):
    mp = ctx.mp
    assert report.format_value(None, 5) is None
    assert report.format_value(mp.mpc(1, -2), 5, mp) == "1.0-2.0j"
    assert report.format_value(mp.mpf("0.125"), 5, mp) == "0.125"
