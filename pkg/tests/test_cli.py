import json
import subprocess
import sys

import pytest

from qsinglet.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "qsinglet", *args], capture_output=True, text=True)


def test_audit_json(capsysbinary):
    assert main(["audit", "--format", "json"]) == 0
    doc = json.loads(capsysbinary.readouterr().out)
    assert doc["conventions"] == ["r=paper,bob=r,bra=state,ord=ba,born=sandwich"]


def test_audit_out_file(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["audit", "--format", "csv", "--out", str(out), "--bob-rule", "r21"]) == 0
    assert "bob=r21" in out.read_text()


def test_audit_standard_conventions(capsysbinary):
    assert main(["audit", "--convention", "standard", "--format", "csv"]) == 0
    lines = capsysbinary.readouterr().out.decode().strip().splitlines()
    assert len(lines) == 1 + 36 * 6


def test_table(capsys):
    assert main(["table", "--q", "4"]) == 0
    out = capsys.readouterr().out
    assert "p(+,-) = 16/17" in out
    assert main(["table", "--q", "2", "--born", "norm"]) == 0
    assert "born=norm" in capsys.readouterr().out


def test_sweep(capsys):
    assert main(["sweep", "--q-min", "1/2", "--q-max", "2", "--steps", "4", "--format", "markdown"]) == 0
    assert capsys.readouterr().out.count("\n") == 6


def test_solve_r(capsys):
    assert main(["solve-r"]) == 0
    assert "solution space dimension: 1" in capsys.readouterr().out
    assert main(["solve-r", "--support", "1,1 2,2 3,3 4,4"]) == 0
    assert "no solution" in capsys.readouterr().out


def test_claims_list(capsys):
    assert main(["claims", "list"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 36


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["audit", "--bob-rule", "foo"],
        ["audit", "--convention", "colour=red"],
        ["table", "--q", "-1"],
        ["table", "--q", "abc"],
        ["sweep", "--q-min", "2", "--q-max", "1", "--steps", "3"],
        ["sweep", "--q-min", "1", "--q-max", "2", "--steps", "0"],
        ["solve-r", "--support", "1-1"],
        ["solve-r", "--support", "5,5"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_module_entry_point_is_deterministic():
    a, b = run("audit"), run("audit")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "qsinglet" in capsys.readouterr().out


def test_computation_failure_exits_3(monkeypatch, capsys):
    from qsinglet import cli
    from qsinglet.errors import SingularMatrix

    def boom(_):
        raise SingularMatrix("forced")

    monkeypatch.setattr(cli, "run_all", boom)
    assert main(["audit"]) == 3
    assert "SingularMatrix" in capsys.readouterr().err
