import json
import subprocess
import sys

import numpy as np
import pytest

from holevolab.cli import main
from holevolab.io import write_operator, write_povm
from holevolab.lab.relations import sample
from holevolab.operators import DensityOperator


def _run(*argv):
    return main(list(argv))


def test_list_and_version(capsys):
    assert _run("--list-relations") == 0
    out = capsys.readouterr().out
    assert "thm3_bias_invariance" in out and "eq37_subsystem" in out
    assert _run("--version") == 0
    assert "holevolab" in capsys.readouterr().out


def test_small_run_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = _run("--relation", "thm5_povm", "--relation", "eq33_ssa", "--dims", "2,2,2",
                "--trials", "3", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["ok"] and len(data["blocks"]) == 2
    assert "report written" in capsys.readouterr().out


def test_csv_and_quiet(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert _run("--relation", "eq33_ssa", "--dims", "2,2,2", "--trials", "2", "--format", "csv",
                "--quiet", "--out", str(out)) == 0
    printed = capsys.readouterr().out.strip().splitlines()
    assert len(printed) == 1 and printed[0].startswith("PASS")
    assert out.read_text().startswith("relation,dims")


def test_worked_examples_suite(capsys):
    assert _run("--suite", "paper-examples") == 0
    assert "example_ghz" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["--dims", "2,2"],
    ["--dims", "0,2,2"],
    ["--relation", "nope"],
    ["--trials", "0", "--relation", "eq33_ssa"],
    ["--workers", "0", "--relation", "eq33_ssa"],
    ["--log-base", "10"],
    ["eval", "thm5_povm"],
    ["eval", "eq33_ssa", "--state", "/no/such/file.json"],
])
def test_usage_errors(argv, capsys):
    assert _run(*argv) == 2


def test_log_base_nats(capsys, tmp_path):
    out = tmp_path / "e.json"
    assert _run("--suite", "paper-examples", "--log-base", "e", "--out", str(out)) == 0
    data = json.loads(out.read_text())
    ghz_block = data["blocks"][0]
    assert ghz_block["results"][0]["rhs"] == pytest.approx(np.log(2))


def _equal_presence_files(tmp_path, noise):
    inst = sample("thm8_equal_presence", (2, 2, 2), 5)
    rho = inst.state.matrix
    rho = (1 - noise) * rho + noise * np.eye(4) / 4
    write_operator(tmp_path / "rho.json", DensityOperator(rho, inst.state.dims))
    for role in ("w", "u", "v"):
        write_povm(tmp_path / f"{role}.json", inst.povms[role])
    return ["eval", "thm8_equal_presence", "--state", str(tmp_path / "rho.json")] + [
        x for role in ("w", "u", "v") for x in ("--povm", str(tmp_path / f"{role}.json"))]


def test_eval_pass_and_fail(tmp_path, capsys):
    assert _run(*_equal_presence_files(tmp_path, 0.0)) == 0
    assert "pass     true" in capsys.readouterr().out
    assert _run(*_equal_presence_files(tmp_path, 1e-3)) == 1
    assert "pass     false" in capsys.readouterr().out


def test_eval_rejects_non_state(tmp_path, capsys):
    bad = DensityOperator(np.diag([1.5, -0.5, 0, 0]), (("a", 2), ("b", 2)))
    write_operator(tmp_path / "bad.json", bad)
    assert _run("eval", "eq33_ssa", "--state", str(tmp_path / "bad.json")) == 2
    assert "not a density operator" in capsys.readouterr().err


def test_eval_precondition_is_usage_error(tmp_path, capsys):
    args = _equal_presence_files(tmp_path, 0.0)
    # two POVMs missing: role u is absent
    assert _run(*args[:6]) == 2


def test_internal_failure_aborts(monkeypatch, capsys):
    import holevolab.cli as cli

    def boom(*a, **k):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(cli, "run_suite", boom)
    assert _run("--relation", "eq33_ssa") == 3
    assert "kaboom" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "holevolab", "--relation", "eq33_ssa", "--dims",
                           "2,2,2", "--trials", "2", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def test_reports_are_byte_identical(tmp_path):
    args = ["--relation", "thm3_bias_invariance", "--relation", "cor9_no_splitting", "--trials",
            "3", "--seed", "7", "--quiet"]
    assert _run(*args, "--out", str(tmp_path / "a.json")) == 0
    assert _run(*args, "--workers", "2", "--out", str(tmp_path / "b.json")) == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
