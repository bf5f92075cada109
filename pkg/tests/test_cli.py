import json

import pytest

from choreq import generate, serialize_instance
from choreq.cli import main
from choreq.repro import EXAMPLES

THM2 = {"kind": "chores", "agents": ["a", "b"], "chores": ["j1", "j2", "j3", "j4"],
        "disutility": [[1, 1, 3, 3], [1, 1, 4, 4]]}


@pytest.fixture
def thm2_file(tmp_path):
    path = tmp_path / "thm2.json"
    path.write_text(json.dumps(THM2))
    return path


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return path


def test_solve_verify_writes_result_and_trace(tmp_path, capsys):
    inp = tmp_path / "in.json"
    inp.write_text(serialize_instance(generate("three-agent", 3, 6, seed=3)))
    out, trace = tmp_path / "out.json", tmp_path / "trace.json"
    code = main(["solve", "--alg", "three-agents", "--input", str(inp), "--verify",
                 "--output", str(out), "--trace", str(trace), "--debug"])
    text = capsys.readouterr().out
    assert code == 0
    assert "ef1: pass" in text and "fpo: pass" in text and "ce: pass" in text
    result = json.loads(out.read_text())
    assert result["algorithm"] == "three-agents"
    assert sorted(c for cs in result["allocation"].values() for c in cs) == sorted(json.loads(inp.read_text())["chores"])
    assert all(result["certificate"][p]["holds"] for p in ("ef1", "ce", "fpo"))
    assert isinstance(json.loads(trace.read_text()), list)


@pytest.mark.parametrize("alg,cls,n,m", [
    ("two-type", "two-type", 4, 6),
    ("bivalued-balanced", "bivalued", 4, 7),
    ("bivalued-efx", "bivalued", 3, 7),
    ("two-ary", "two-ary", 3, 4),
])
def test_solve_each_algorithm(tmp_path, capsys, alg, cls, n, m):
    inp = tmp_path / "in.json"
    inp.write_text(serialize_instance(generate(cls, n, m, seed=5)))
    assert main(["solve", "--alg", alg, "--input", str(inp), "--verify"]) == 0
    assert "fail" not in capsys.readouterr().out


def test_solve_precondition_is_input_error(thm2_file, capsys):
    assert main(["solve", "--alg", "three-agents", "--input", str(thm2_file)]) == 1
    assert "3 agents" in capsys.readouterr().err


def test_bad_input_file(tmp_path, capsys):
    bad = _write(tmp_path, "bad.json", dict(THM2, disutility=[[1, 1, 3, -3], [1, 1, 4, 4]]))
    assert main(["solve", "--alg", "two-type", "--input", str(bad)]) == 1
    assert "disutility[0][3]" in capsys.readouterr().err
    assert main(["solve", "--alg", "two-type", "--input", str(tmp_path / "missing.json")]) == 1


@pytest.mark.parametrize("argv", [
    [],
    ["solve", "--alg", "nope", "--input", "x"],
    ["check", "--input", "x", "--alloc", "y", "--props", "ef2"],
    ["gen", "--class", "general", "--agents", "two", "--chores", "3", "--output", "x"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 64


def test_check_reports_witnesses(tmp_path, thm2_file, capsys):
    alloc = _write(tmp_path, "alloc.json", {"allocation": {"a": ["j1", "j3"], "b": ["j2", "j4"]}})
    assert main(["check", "--input", str(thm2_file), "--alloc", str(alloc), "--props", "efx"]) == 0
    assert main(["check", "--input", str(thm2_file), "--alloc", str(alloc), "--props", "efx,fpo"]) == 2
    out = capsys.readouterr().out
    assert "efx: pass" in out and "fpo: fail  total_cost_saving=1/3" in out


def test_check_ce_needs_payments(tmp_path, thm2_file, capsys):
    alloc = _write(tmp_path, "alloc.json", {"allocation": {"a": ["j1", "j2", "j3", "j4"], "b": []}})
    assert main(["check", "--input", str(thm2_file), "--alloc", str(alloc), "--props", "ce"]) == 1
    pay = _write(tmp_path, "pay.json", {"payments": {"j1": 1, "j2": 1, "j3": 3, "j4": 3}})
    assert main(["check", "--input", str(thm2_file), "--alloc", str(alloc),
                 "--props", "ce,pef1", "--payments", str(pay)]) == 2
    out = capsys.readouterr().out
    assert "ce: pass" in out and "pef1: fail" in out


def test_oracle_lists_efx(thm2_file, capsys):
    assert main(["oracle", "--input", str(thm2_file), "--find", "efx"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("4 allocation(s)")
    assert len(lines) == 5
    assert main(["oracle", "--input", str(thm2_file), "--find", "efx,fpo"]) == 0
    assert capsys.readouterr().out.startswith("0 allocation(s)")


def test_oracle_limit_from_environment(thm2_file, monkeypatch, capsys):
    monkeypatch.setenv("CHOREQ_ENUM_LIMIT", "8")
    assert main(["oracle", "--input", str(thm2_file), "--find", "ef1"]) == 1
    assert "16" in capsys.readouterr().err
    assert main(["oracle", "--input", str(thm2_file), "--find", "ef1", "--limit", "16"]) == 0


def test_gen_seed_from_environment(tmp_path, monkeypatch):
    a, b, c = (tmp_path / f"{x}.json" for x in "abc")
    monkeypatch.setenv("CHOREQ_SEED", "9")
    assert main(["gen", "--class", "bivalued", "--agents", "3", "--chores", "5", "--k", "7/2",
                 "--output", str(a)]) == 0
    assert main(["gen", "--class", "bivalued", "--agents", "3", "--chores", "5", "--k", "7/2",
                 "--seed", "9", "--output", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert "7/2" in a.read_text()
    monkeypatch.setenv("CHOREQ_SEED", "x")
    assert main(["gen", "--class", "general", "--agents", "2", "--chores", "2", "--output", str(c)]) == 1


def test_gen_inconsistent(tmp_path):
    out = tmp_path / "x.json"
    assert main(["gen", "--class", "three_agent", "--agents", "4", "--chores", "2", "--output", str(out)]) == 1


@pytest.mark.parametrize("example", EXAMPLES)
def test_repro_examples(example, capsys):
    assert main(["repro", "--example", example]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS" in out


def test_repro_thm2_reports_nonexistence(capsys):
    main(["repro", "--example", "thm2"])
    assert "no EFX+fPO allocation exists" in capsys.readouterr().out


def test_module_entry_point():
    import subprocess
    import sys
    done = subprocess.run([sys.executable, "-m", "choreq", "repro", "--example", "B1"],
                          capture_output=True, text=True)
    assert done.returncode == 0 and "PASS" in done.stdout
