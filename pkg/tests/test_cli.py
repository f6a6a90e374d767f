import re
import subprocess
import sys

import pytest

from semiexact import cli, suites

from helpers import DIAGRAMS

SHIPPED = sorted(DIAGRAMS.glob("*.diagram"))


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def keys(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


def test_lambek_on_golden_example(capsys):
    code, out, _ = run(capsys, "lambek", DIAGRAMS / "abgroup_times2_mod2.diagram", "--format", "machine")
    k = keys(out)
    assert code == 0
    assert k["lambek.iso"] == "true" and k["imS.fingerprint"] == "2" and k["kerT.fingerprint"] == "2"
    assert k["oracle.agrees"] == "true" and k["rows.exact"] == "true"


def test_check_on_non_exact_row(capsys):
    code, out, _ = run(capsys, "check", DIAGRAMS / "abgroup_nonexact_row.diagram", "--format", "machine")
    assert code == 3
    assert keys(out)["rows.exact"] == "false"


def test_axioms_grp(capsys):
    code, out, _ = run(capsys, "axioms", "--model", "grp", "--trials", "30", "--format", "machine")
    k = keys(out)
    assert code == 0
    assert k["grp.ex2"] == "false"
    assert k["grp.witness.inner_is_kernel"] == "true"
    assert k["grp.witness.outer_is_kernel"] == "true"
    assert k["grp.witness.composite_is_kernel"] == "false"


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_examples_exit_codes(capsys, path):
    expected = 3 if "not_exact" in path.name or "nonexact" in path.name else 0
    for command in ("check", "lambek"):
        code, out, _ = run(capsys, command, path, "--format", "machine")
        assert code == expected
        assert keys(out)["exit"] == str(expected)


@pytest.mark.parametrize("path", [p for p in SHIPPED if "generated" in p.name], ids=lambda p: p.name)
def test_generated_examples_are_reproducible(capsys, path):
    text = path.read_text()
    model, seed, trial = re.search(r"--model (\w+) --seed (\d+) \(trial (\d+)\)", text).groups()
    code, out, _ = run(capsys, "gen", "--model", model, "--seed", seed, "--trials", int(trial) + 1)
    assert code == 0
    last = out.split("# seed ")[-1]
    body = last.split("\n", 1)[1]
    assert text.endswith(body)


@pytest.mark.parametrize("argv", [
    ("axioms", "--model", "ptset", "--trials", "20", "--seed", "5", "--format", "machine"),
    ("gen", "--model", "abgroup", "--trials", "5", "--seed", "9"),
    ("gen", "--model", "grp", "--trials", "20", "--seed", "9", "--check", "--format", "machine"),
])
def test_machine_output_is_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


def test_gen_check_counts(capsys):
    code, out, _ = run(capsys, "gen", "--model", "ptset", "--trials", "50", "--check", "--format", "machine")
    k = keys(out)
    assert code == 0 and k["count.iso"] == "50" and k["count.oracle_agrees"] == "50"


def test_gen_writes_files(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--model", "grp", "--trials", "3", "--out", tmp_path)
    assert code == 0 and len(list(tmp_path.glob("*.diagram"))) == 3


@pytest.mark.parametrize("argv", [(), ("bogus",), ("axioms", "--trials", "-1"), ("gen", "--model", "rings")])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_missing_and_malformed_files(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "nope.diagram")[0] == 1
    bad = tmp_path / "bad.diagram"
    bad.write_text("model ptset\nobject A size zero\n")
    code, _, err = run(capsys, "check", bad)
    assert code == 1 and "line 2" in err


def test_predicted_failure_exits_2(capsys, monkeypatch):
    prop = suites.REGISTRY["category_laws"]

    def broken(m, rng, n):
        raise suites.Failure("injected")

    monkeypatch.setitem(suites.REGISTRY, "category_laws", prop.__class__(prop.name, prop.statement, prop.models, broken))
    code, out, _ = run(capsys, "axioms", "--model", "ptset", "--trials", "3", "--seed", "11")
    assert code == 2
    assert "FAILED category_laws model=ptset seed=11 trial=0" in out


def test_text_format(capsys):
    code, out, _ = run(capsys, "lambek", DIAGRAMS / "ptset_two_element.diagram")
    assert code == 0 and re.search(r"lambek\.iso\s+true", out)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "semiexact", "lambek", str(DIAGRAMS / "ptset_two_element.diagram"), "--format", "machine"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "lambek.iso=true" in proc.stdout
