"""Command line surface: exit codes, report envelope, determinism."""

import json

import pytest

from mae3.cli import main
from mae3.jet import D1, Distribution

PIANO = "p111 - p112 - 2*p122"
SP1 = Distribution.make(D1, (0, 0, 1, 1, 0), (0, 0, 2, 0, 1))


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def span_file(tmp_path, dist, name="span.json"):
    path = tmp_path / name
    path.write_text(json.dumps(dist.to_json()))
    return str(path)


def test_classify_report(capsys):
    code, rep = run(capsys, ["classify", PIANO, "--json"])
    assert code == 0
    assert sorted(rep) == ["command", "input_sha256", "results", "seed",
                           "version"]
    res = rep["results"]
    assert res["class"] == "quasi-linear"
    assert res["mae"] is True
    assert res["orthogonal"] is True
    assert len(res["distributions"]) == 3
    assert res["recoverable_probe"] is True


def test_classify_fully_nonlinear(capsys):
    code, rep = run(capsys, ["classify", "p222*p112 - p122^2", "--json"])
    assert code == 0
    assert rep["results"]["class"] == "fully-nonlinear-goursat"
    assert len(rep["results"]["distributions"]) == 1


def test_classify_rejects_non_mae(capsys):
    code, rep = run(capsys, ["classify", "p111^2", "--json"])
    assert code == 3
    assert rep["results"]["class"] == "not-mae"
    assert rep["results"]["mae"] is False


def test_parse_failure_exit_code(capsys):
    code, rep = run(capsys, ["classify", "p111 +", "--json"])
    assert code == 2
    assert rep["error"]["kind"] == "parse"


def test_degenerate_exit_code(capsys):
    code, rep = run(capsys, ["recover", "p111^2", "--json"])
    assert code == 4
    assert rep["error"]["kind"] == "degenerate"


def test_cone_lines(capsys):
    code, rep = run(capsys, ["cone", PIANO, "--json"])
    assert code == 0
    lines = rep["results"]["lines"]
    assert len(lines) == 3
    assert all(ln["strong"] for ln in lines)
    assert all(not ln["inexact"] for ln in lines)


def test_cone_accepts_explicit_point(capsys):
    code, rep = run(capsys, ["cone", PIANO, "--point", "{}", "--json"])
    assert code == 0
    assert len(rep["results"]["lines"]) == 3


def test_build_from_file(capsys, tmp_path):
    path = span_file(tmp_path, SP1)
    code, rep = run(capsys, ["build", "--distribution", path, "--json"])
    assert code == 0
    assert rep["results"]["equation"] == PIANO


def test_build_missing_file(capsys):
    code, rep = run(capsys, ["build", "--distribution", "/no/such/file.json",
                             "--json"])
    assert code == 2
    assert rep["error"]["kind"] == "parse"


def test_recover_report(capsys):
    code, rep = run(capsys, ["recover", PIANO, "--json"])
    assert code == 0
    res = rep["results"]
    assert res["delta"] == "1"
    assert res["pointwise"] is False
    assert res["rebuilt"] == PIANO


def test_orthogonal_from_file(capsys, tmp_path):
    path = span_file(tmp_path, SP1)
    code, rep = run(capsys, ["orthogonal", "--distribution", path, "--json"])
    assert code == 0
    assert rep["results"]["orthogonal"] is True
    assert len(rep["results"]["pair"]) == 2


def test_integrals_candidates_and_search(capsys):
    code, rep = run(capsys, ["integrals", "p122", "--candidate", "p12",
                             "--candidate", "p11", "--search-degree", "1",
                             "--json"])
    assert code == 0
    cands = {c["f"]: c for c in rep["results"]["candidates"]}
    assert cands["p12"]["verdict"] == "yes"
    assert cands["p12"]["via_distribution"] is not None
    assert cands["p11"]["verdict"] == "no"
    assert cands["p11"]["via_distribution"] is None
    assert "p12" in rep["results"]["search"]["basis"]


@pytest.mark.parametrize("suite,n", [("roundtrip", 5), ("orthogonality", 3),
                                     ("strong-char", 3),
                                     ("omega-restriction", 5),
                                     ("integrals", 2)])
def test_verify_suites_pass(capsys, suite, n):
    code, rep = run(capsys, ["verify", "--suite", suite,
                             "--n-cases", str(n), "--json"])
    assert code == 0, rep["results"]["failures"]
    assert rep["results"]["ok"] is True


def test_reports_are_deterministic(capsys):
    code1 = main(["classify", PIANO, "--json"])
    out1 = capsys.readouterr().out
    code2 = main(["classify", PIANO, "--json"])
    out2 = capsys.readouterr().out
    assert (code1, out1) == (code2, out2)


def test_pretty_and_compact_agree(capsys):
    main(["recover", "p111", "--json"])
    compact = json.loads(capsys.readouterr().out)
    main(["recover", "p111", "--pretty"])
    pretty = json.loads(capsys.readouterr().out)
    assert compact == pretty


def test_probe_point_rejects_unknown_coordinate(capsys):
    code, rep = run(capsys, ["classify", PIANO, "--probe-point",
                             '{"x3": 1}', "--json"])
    assert code == 4
    assert "unknown coordinates" in rep["error"]["message"]


def test_seed_round_trips_into_report(capsys):
    code, rep = run(capsys, ["classify", PIANO, "--seed", "99", "--json"])
    assert code == 0
    assert rep["seed"] == 99
