from __future__ import annotations

import subprocess
import sys

import pytest

from closure_descent import cli
from closure_descent import enumeration as en
from closure_descent import fixtures as fx
from closure_descent.constructions import pullback
from closure_descent.document import parse


def run(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_check_plain(capsys):
    status, out, _ = run(capsys, "check", "p2")
    assert status == 0
    lines = out.splitlines()
    assert "surjective: true" in lines
    assert "open: true" in lines and "closed: true" in lines
    assert "effective: true" in lines
    assert any(line.startswith("  conditions: a=true") for line in lines)


def test_check_tsv(capsys):
    status, out, _ = run(capsys, "--format", "tsv", "check", "beta", "--property", "open")
    assert status == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0] == ["property", "verdict", "conditions"]
    assert ["open", "false"] == rows[-1][:2]


def test_check_effective_by_enumeration(capsys):
    status, out, _ = run(capsys, "check", "p", "--property", "effective")
    assert status == 0
    assert "effective: true" in out and "route=enumeration" in out
    status, out, _ = run(capsys, "check", "p2", "--property", "effective", "--no-fast-path")
    assert "route=enumeration" in out


def test_check_ladder(capsys):
    status, out, _ = run(capsys, "check", "p2", "--property", "ladder")
    assert status == 0 and "a=true b=true c=true" in out


def test_check_document_file(tmp_path, capsys):
    doc = tmp_path / "m.cls"
    doc.write_text("space S\n  points: a b\n  closed: {}, {b}\nmap f: S -> S\n  send a -> b\n  send b -> a\n")
    status, out, _ = run(capsys, "check", "f", "--doc", str(doc), "--property", "descent")
    assert status == 0
    assert "morphism: false" in out and "descent: n/a not a morphism" in out


def test_construct_pullback_parses_back(capsys):
    status, out, _ = run(capsys, "construct", "pullback", "p2", "alpha", "--name", "PB")
    assert status == 0
    doc = parse(out)
    expected = pullback(fx.p2, fx.alpha2)
    assert doc.space("PB") == expected.space
    assert doc.map("pi1").image == expected.proj1.image


def test_construct_coequalizer_and_subspace(ex, capsys):
    # a map coequalized with itself: the quotient is the codomain
    status, out, _ = run(capsys, "construct", "coequalizer", "p", "p")
    assert status == 0
    doc = parse(out)
    assert doc.space("Q") == ex.B
    assert doc.map("q").image == (0, 1, 2)
    status, out, _ = run(capsys, "construct", "subspace", "B2", "p1")
    assert status == 0
    assert parse(out).space("S") == fx.A2


def test_verify_paper_golden_suites(capsys):
    for suite in ("s5", "s73"):
        status, out, _ = run(capsys, "verify-paper", "--suite", suite)
        assert status == 0, out
        assert "FAIL" not in out and out.rstrip().endswith("total failures: 0")


def test_verify_paper_exhaustive_suite_small(capsys):
    status, out, _ = run(capsys, "verify-paper", "--suite", "thm65", "--n", "2")
    assert status == 0 and "violations: 0" in out


def test_verify_paper_reports_violations(monkeypatch, capsys):
    def broken(n, workers, object_level=False):
        r = en.SuiteReport("broken", n)
        r.violations.append("synthetic")
        return r

    monkeypatch.setattr(en, "verify_descent_is_effective", broken)
    status, out, _ = run(capsys, "verify-paper", "--suite", "thm43", "--n", "1")
    assert status == 1 and "total failures: 1" in out


def test_mine_small(capsys):
    status, out, _ = run(capsys, "mine", "--n", "2")
    assert status == 0 and "remains open" in out


def test_count_moore(capsys):
    status, out, err = run(capsys, "count-moore", "--n", "3", "--check")
    assert status == 0 and out.strip() == "61" and "brute-force count: 61" in err
    status, out, _ = run(capsys, "--format", "tsv", "count-moore", "--n", "3", "--up-to-iso")
    assert out.splitlines() == ["n\tfamilies", "3\t19"]


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "nope"],
        ["check", "p2", "--doc", "/nonexistent/file.cls"],
        ["construct", "pullback", "p2"],
        ["count-moore", "--n", "9"],
        ["mine", "--n", "7"],
        ["no-such-command"],
        ["check"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 2
    assert err


def test_document_error_reports_position(tmp_path, capsys):
    doc = tmp_path / "bad.cls"
    doc.write_text("space S\n  points: a\n  closed: {z}\n")
    status, _, err = run(capsys, "check", "f", "--doc", str(doc))
    assert status == 2 and "line 3, column 12" in err


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "closure_descent", "count-moore", "--n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert r.returncode == 0 and r.stdout.strip() == "7"
