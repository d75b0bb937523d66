from __future__ import annotations

import json
import subprocess
import sys

import pytest

from polycycles import checks, cli
from polycycles.checks import CheckResult
from polycycles.syntax import from_json, parse_cycle


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_polygon_diff(capsys):
    code, out, _ = run(capsys, "polygon", "diff", "[1,2,3]")
    assert code == 0
    assert out == "-[1,2] ^ [2,3] - [1,3] ^ [2,1] + [1,3] ^ [2,3]"


def test_two_gon_coproduct(capsys):
    for method in ("admissible", "deconcat"):
        code, out, _ = run(capsys, "polygon", "coproduct", "[a,b]", "--method", method)
        assert (code, out) == (0, "1 (x) [[a,b]] + [[a,b]] (x) 1")


def test_format_before_or_after_subcommand(capsys):
    _, a, _ = run(capsys, "--format", "json", "tree", "diff", "(1 (x1 x2))")
    _, b, _ = run(capsys, "tree", "diff", "(1 (x1 x2))", "--format", "json")
    assert a == b
    assert json.loads(a)["kind"] == "lincomb"


def test_json_output_parses_back(capsys):
    _, out, _ = run(capsys, "cycle", "from-polygon", "[x1,x2,1]", "--format", "json")
    assert from_json(out) == parse_cycle("[1-1/t, 1-t/x1, 1-t/x2]")


def test_latex_output(capsys):
    code, out, _ = run(capsys, "polygon", "psi", "[1,2,3,4]", "--format", "latex")
    assert code == 0 and out.count("(4") == 2


def test_cycle_commands(capsys):
    _, out, _ = run(capsys, "cycle", "diff", "[1-1/t, 1-t/x1, 1-t/x2]")
    assert out == "[1-1/x1, 1-1/x2] - [1-1/x1, 1-x1/x2] + [1-1/x2, 1-x2/x1]"
    assert run(capsys, "cycle", "admissible", "[1-1/t, 1-t/x1, 1-t/x2]")[1] == "true"
    assert run(capsys, "cycle", "from-tree", "(1 (x1 x2))")[1] == "[1-1/t, 1-t/x1, 1-t/x2]"


def test_iterint_commands(capsys):
    assert run(capsys, "iterint", "normalize", "I(a0; a1; a2)")[1] == "-I(0; a1; a0) + I(0; a1; a2)"
    assert run(capsys, "iterint", "cobracket", "I(0; a; b)")[1] == "0"
    assert run(capsys, "iterint", "normalize", "I(0; a; 0)", "--keep-loops")[1] == "I(0; a; 0)"


def test_eval_li(capsys):
    code, out, _ = run(capsys, "eval", "li", "--ns", "1", "1", "--zs", "0.3", "0.2")
    assert code == 0
    assert float(out.splitlines()[0].split(": ")[1]) == pytest.approx(0.00708897940082921886, abs=1e-12)


def test_eval_iint_and_hodge(capsys):
    code, out, _ = run(capsys, "eval", "iint", "--x0", "0", "--xs", "50/3", "5", "--xend", "1")
    assert code == 0 and out.startswith("value: 0.0070889794")
    code, out, _ = run(capsys, "compare", "hodge", "--x1", "5", "--x2", "2.5", "--format", "json")
    assert code == 0 and float(json.loads(out)["data"]["difference"]) < 1e-8


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "polygon", "diff", "[1,2")
    assert code == cli.EXIT_PARSE and "parse error" in err
    assert run(capsys, "polygon", "frobnicate", "[1,2]")[0] == cli.EXIT_PARSE


def test_math_error_exit_code(capsys):
    code, _, err = run(capsys, "compare", "hodge", "--x1", "5", "--x2", "0.5")
    assert code == cli.EXIT_MATH and "SingularPath" in err
    assert run(capsys, "eval", "li", "--ns", "1", "--zs", "1")[0] == cli.EXIT_MATH


def test_verify_failure_exit_code(capsys, monkeypatch):
    bad = [CheckResult("broken", False, 1, 0.0, "x")]
    monkeypatch.setattr(checks, "run_suite", lambda *a, **k: bad)
    code, out, _ = run(capsys, "verify", "trees")
    assert code == cli.EXIT_VERIFY
    assert "FAIL broken" in out and "counterexample: x" in out


def test_verify_is_reproducible(capsys):
    a = run(capsys, "verify", "signs", "--seed", "7")
    b = run(capsys, "verify", "signs", "--seed", "7")
    assert a == b and a[0] == 0


def test_verify_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("POLYLOG_SEED", "11")
    code, out, _ = run(capsys, "verify", "catalan", "--format", "json")
    assert code == 0 and json.loads(out)["data"]["seed"] == 11


def test_help_shows_grammar(capsys):
    assert cli.main(["--help"]) == 0
    assert "barword" in capsys.readouterr().out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "polycycles", "polygon", "bar", "[1,2,3]"],
                         capture_output=True, text=True, check=True).stdout.strip()
    assert out == "[[1,2,3]] - [[1,3]|[2,1]] + [[1,3]|[2,3]] + [[2,3]|[1,2]]"


def test_verify_all_command():
    result = subprocess.run([sys.executable, "-m", "polycycles", "verify", "all", "--max-sides", "5", "--seed", "42"],
                            capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout.strip().endswith("checks passed")
