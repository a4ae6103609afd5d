import json

import pytest

from lerchkit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.startswith("lerchkit ")


def test_no_command_is_usage_error(capsys):
    assert run(capsys)[0] == cli.EXIT_USAGE


def test_list_all(capsys):
    code, out, _ = run(capsys, "list")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split()[:3] == ["ID", "TIER", "TITLE"]
    assert len(lines) == 49


def test_list_glob(capsys):
    code, out, _ = run(capsys, "list", "THM-*")
    rows = out.splitlines()[1:]
    assert [r.split()[0] for r in rows] == ["THM-SS", "THM-CC", "THM-SS1"]
    assert all(" core " in r for r in rows)
    code, out, _ = run(capsys, "list", "ZZZ")
    assert code == 0 and len(out.splitlines()) == 1


@pytest.mark.parametrize("argv, value, route", [
    (("phi", "0,0", "2,0", "5,0"), "0.04", "series-direct"),
    (("phi", "-1", "2", "1", "--digits", "20"), "0.82246703342411321824", "zeta-reduction"),
    (("phi", "0.6,0.8", "2", "1", "--digits", "20"), "1.0487171797869395606+0.2823988224789728772j",
     "series-accelerated"),
    (("const", "catalan", "--digits", "30"), "0.915965594177219015054603514932", "catalan-alternating"),
    (("const", "pi", "--digits", "20"), "3.1415926535897932385", "pi-agm"),
    (("gamma", "0.5", "--digits", "20"), "1.7724538509055160273", "stirling-recurrence"),
    (("zeta", "2", "1", "--digits", "20"), "1.6449340668482264365", "euler-maclaurin"),
    (("zetaprime", "0", "1", "--digits", "20"), "-0.91893853320467274178", "euler-maclaurin (s-derivative)"),
    (("polygamma", "1", "1", "--digits", "20"), "1.6449340668482264365", "asymptotic-recurrence"),
    (("phiprime", "-1", "-2", "0.5", "--digits", "20"), None, "zeta-reduction (s-derivative)"),
])
def test_eval(capsys, argv, value, route):
    code, out, _ = run(capsys, "eval", *argv)
    lines = out.splitlines()
    assert code == 0
    if value is not None:
        assert lines[0] == value
    assert lines[1] == f"route: {route}"


@pytest.mark.parametrize("argv, code", [
    (("zeta", "1", "1"), cli.EXIT_DOMAIN),
    (("phi", "1.5", "2", "1"), cli.EXIT_DOMAIN),
    (("gamma", "-2"), cli.EXIT_DOMAIN),
    (("phi", "0.5", "2"), cli.EXIT_USAGE),
    (("gamma", "abc"), cli.EXIT_USAGE),
    (("gamma", "1", "--digits", "10"), cli.EXIT_USAGE),
    (("const", "tau"), cli.EXIT_USAGE),
    (("sinc", "1"), cli.EXIT_USAGE),
])
def test_eval_errors(capsys, argv, code):
    assert run(capsys, "eval", *argv)[0] == code


def test_check_writes_reports(capsys, tmp_path):
    out = tmp_path / "r"
    code, stdout, _ = run(capsys, "check", "--only", "DEG-*", "--samples", "3", "--digits", "30",
                          "--tol", "1e-20", "--out", str(out), "--format", "json,markdown,csv")
    assert code == 0
    assert "DEG-SS1" in stdout
    doc = json.loads((out / "report.json").read_text())
    assert [s["id"] for s in doc["identities"]] == ["DEG-SS", "DEG-CC", "DEG-SS1"]
    assert doc["config"]["samples"] == 3
    assert (out / "report.md").exists() and (out / "report.csv").exists()


def test_check_is_deterministic(capsys, tmp_path):
    argv = ["check", "--only", "THM-CC,FE-3", "--samples", "4", "--digits", "30", "--tol", "1e-20"]
    run(capsys, *argv, "--out", str(tmp_path / "a"))
    run(capsys, *argv, "--out", str(tmp_path / "b"))
    assert (tmp_path / "a" / "report.json").read_bytes() == (tmp_path / "b" / "report.json").read_bytes()


def test_check_parallel_matches_serial(capsys, tmp_path):
    argv = ["check", "--only", "DEG-SS,AP-SS", "--samples", "3", "--digits", "30", "--tol", "1e-20"]
    run(capsys, *argv, "--out", str(tmp_path / "a"))
    run(capsys, *argv, "--jobs", "2", "--out", str(tmp_path / "b"))
    assert (tmp_path / "a" / "report.json").read_bytes() == (tmp_path / "b" / "report.json").read_bytes()


def test_check_discrepancy_exit_zero(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--only", "POLY-BINOM", "--samples", "10", "--digits", "30",
                       "--tol", "1e-20", "--out", str(tmp_path))
    assert code == 0
    assert "SUSPECTED DISCREPANCIES" in out
    assert "ascending-powers holds 10/10" in out


def test_check_failure_exit_one(capsys, tmp_path, monkeypatch):
    from dataclasses import replace

    import lerchkit.identities.core as core

    ident = core.lookup("DEG-CC")
    monkeypatch.setitem(core._REGISTRY, "DEG-CC", replace(ident, rhs=lambda E, P: 0))
    code, out, _ = run(capsys, "check", "--only", "DEG-CC", "--samples", "2", "--digits", "30",
                       "--tol", "1e-20", "--out", str(tmp_path))
    assert code == cli.EXIT_FAIL
    assert "FAILING: DEG-CC" in out


@pytest.mark.parametrize("argv", [
    ("--tol", "1e-45"),
    ("--samples", "0"),
    ("--format", "pdf"),
    ("--digits", "x"),
    ("--jobs", "0"),
])
def test_check_usage_errors(capsys, tmp_path, argv):
    assert run(capsys, "check", "--only", "DEG-SS", "--out", str(tmp_path), *argv)[0] == cli.EXIT_USAGE


def test_missing_config_is_io_error(capsys, tmp_path):
    assert run(capsys, "check", "--config", str(tmp_path / "none.cfg"))[0] == cli.EXIT_IO


def test_unwritable_output_is_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = run(capsys, "check", "--only", "AP-SS", "--digits", "30", "--tol", "1e-20",
               "--out", str(blocker / "sub"))[0]
    assert code == cli.EXIT_IO


def _args(*argv):
    return cli.build_parser().parse_args(["check", *argv])


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\ndigits = 40\ntol = 1e-25\nsamples = 7\nout = from-file\nonly = DEG-*, FE-3\n")
    env = {cli.OUT_ENV: "from-env"}
    c = cli.resolve_config(_args("--config", str(cfg), "--samples", "9"), env)
    assert (c.digits, c.tolerance, c.samples, c.out) == (40, 1e-25, 9, "from-env")
    assert c.only == ("DEG-*", "FE-3")
    c = cli.resolve_config(_args("--config", str(cfg), "--out", "flag"), env)
    assert c.out == "flag"
    c = cli.resolve_config(_args(), {})
    assert c == cli.RunConfig()


def test_config_file_errors():
    with pytest.raises(cli.UsageError):
        cli.parse_config_text("colour = blue\n")
    with pytest.raises(cli.UsageError):
        cli.parse_config_text("digits\n")
    with pytest.raises(cli.UsageError):
        cli.parse_config_text("digits = many\n")
    assert cli.parse_config_text("n-max = 4\nformat = csv\n") == {"n_max": 4, "formats": ("csv",)}


def test_env_out_used(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env"))
    code = run(capsys, "check", "--only", "AP-SS", "--digits", "30", "--tol", "1e-20")[0]
    assert code == 0
    assert (tmp_path / "env" / "report.json").exists()


def test_config_echo_excludes_output_settings():
    echo = cli.RunConfig(out="x", jobs=3).echo()
    assert "out" not in echo and "jobs" not in echo and "formats" not in echo
    assert echo["only"] == ["*"]
