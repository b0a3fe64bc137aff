"""Acceptance criteria 1-10.

Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line; the lines are also
repeated in the pytest terminal summary. Run directly with
``python3 tests/test_acceptance.py`` to get just the ten lines.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from holevolab import config
from holevolab.entropy import QUADRATIC, entropy
from holevolab.lab.instances import Instance
from holevolab.lab.relations import evaluate
from holevolab.lab.suite import DEFAULT_DIMS, run_suite, search_counterexample_eq37, z_axis_state
from holevolab.measurements import computational_basis, fourier_basis, qubit_mub_triple
from holevolab.measures import chi_location, outcome_probabilities
from holevolab.entropy import _shannon
from holevolab.operators import ghz

SEED = 42
TRIALS = 100
RESULTS = []


def report(n, ok, detail):
    line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _suite(ids, dims=DEFAULT_DIMS, trials=TRIALS, **kw):
    t0 = time.perf_counter()
    rep = run_suite(ids, dims, trials, SEED, **kw)
    return rep, time.perf_counter() - t0


def _ran(rep):
    return [b for b in rep.blocks if not b.skipped]


def _min_slack(rep):
    return min(min(r.slack for r in b.results) for b in _ran(rep))


def _max_abs(rep):
    return max(max(abs(r.slack) for r in b.results) for b in _ran(rep))


def test_01_ghz_regression():
    t0 = time.perf_counter()
    rho = ghz().density()
    z, x = computational_basis(2), fourier_basis(2)
    chi_zb = chi_location(z, rho, over="b")
    chi_xc = chi_location(x, rho, over="c")
    dchi = chi_zb - chi_location(z, rho, over="c")
    elapsed = time.perf_counter() - t0
    errs = (abs(chi_zb - 1.0), abs(chi_xc), abs(dchi))
    report(1, max(errs) < 1e-9 and elapsed < 1.0,
           f"chi(z,b)={chi_zb:.12f} chi(x,c)={chi_xc:.1e} dchi={dchi:.1e} in {elapsed:.3f}s")


def test_02_bias_invariance_suite():
    rep, elapsed = _suite(["thm3_bias_invariance"])
    n = sum(len(b.results) for b in rep.blocks)
    worst = _max_abs(rep)
    report(2, rep.ok and worst < 1e-8 and n == 3 * TRIALS and elapsed < 60,
           f"{n} states x (5 bases + 5 rank-1 POVMs) x 4 kinds, max|dchi-dS|={worst:.1e}, "
           f"{elapsed:.1f}s")


def test_03_exclusion_suite():
    rep, _ = _suite(["thm5_povm", "thm5_single", "thm5_bases", "thm5_mub"])
    low = _min_slack(rep)
    rho = ghz().density()
    tight = evaluate("thm5_mub", Instance((2, 2, 2), rho,
                                          povms={"v": fourier_basis(2), "w": computational_basis(2)}),
                     tol_eq=1e-9, tol_ineq=1e-9)
    report(3, rep.ok and low >= -1e-9 and abs(tight.slack) < 1e-9,
           f"min slack {low:.1e} over {4 * 3 * TRIALS} evaluations; GHZ unbiased-basis slack "
           f"{tight.slack:.1e}")


def test_04_truncation():
    eq, _ = _suite(["lemma4_truncation_eq"])
    ineq, _ = _suite(["lemma4_truncation_ineq"])
    worst, low = _max_abs(eq), _min_slack(ineq)
    report(4, eq.ok and ineq.ok and worst < 1e-8 and low >= -1e-9,
           f"pure-state equality max|slack|={worst:.1e}; mixed-state min slack {low:.1e}")


def test_05_single_system_uncertainty():
    rep, _ = _suite(["cor7_single_system"], dims=[(2, 2, 2)], trials=1000)
    low = _min_slack(rep)
    x, y, z = qubit_mub_triple()
    worst_tight = 0.0
    for p0 in np.linspace(0.0, 1.0, 21):
        rho = z_axis_state(p0)
        total = sum(_shannon(outcome_probabilities(B, rho)) for B in (x, y, z))
        worst_tight = max(worst_tight, abs(total - (2 * config.log(2) + entropy(rho))))
    rho = z_axis_state(0.25)
    quarter = sum(_shannon(outcome_probabilities(B, rho)) for B in (x, y, z))
    report(5, rep.ok and low >= -1e-9 and worst_tight < 1e-9 and abs(quarter - 2.811278) < 1e-6,
           f"1000 qubit states min slack {low:.1e}; z-axis max|slack| {worst_tight:.1e}; "
           f"diag(1/4,3/4) sum {quarter:.7f} bits")


def test_06_presence_suites():
    ids = ["thm8_suppression", "thm8_equal_presence", "thm10_presence", "thm11_decoupling",
           "thm11_pure", "thm11_channel", "cor6_channel", "cor9_no_splitting"]
    rep, elapsed = _suite(ids)
    fails = [f"{b.relation}@{b.dims}" for b in rep.blocks if not b.ok]
    skipped = [f"{b.relation}@{'x'.join(map(str, b.dims))}" for b in rep.blocks if b.skipped]
    report(6, rep.ok, f"{len(_ran(rep))} blocks of {TRIALS} trials pass in {elapsed:.1f}s"
           + (f"; failing {fails}" if fails else "")
           + (f"; skipped (d_b < d_a) {skipped}" if skipped else ""))


def test_07_cross_oracles():
    rep, _ = _suite(["pinching_identity", "channel_duality"], tol_eq=1e-9)
    worst = _max_abs(rep)
    report(7, rep.ok and worst < 1e-9,
           f"H(P|b)=S(e|b) and channel/state chi agree, max residual {worst:.1e}")


def test_08_subsystem_monotonicity():
    found = search_counterexample_eq37(QUADRATIC, 10_000, seed=0, dims=(2, 2, 2))
    structured = (found.found and found.violation > 1e-6) or (not found.found and found.trials
                                                              == 10_000)
    rep, _ = _suite(["eq37_subsystem"])
    low = _min_slack(rep)
    what = (f"quadratic witness after {found.trials} trials, violation {found.violation:.2e}"
            if found.found else "quadratic: not found in 10000 trials")
    report(8, structured and rep.ok and low >= -1e-9,
           f"{what}; von Neumann min slack {low:.1e}")


def _cli(*args):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "holevolab", *args], capture_output=True,
                          text=True)
    return proc, time.perf_counter() - t0


@pytest.mark.slow
def test_09_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    p1, _ = _cli("--suite", "all", "--seed", "7", "--quiet", "--out", str(a))
    p2, _ = _cli("--suite", "all", "--seed", "7", "--quiet", "--workers", "4", "--out", str(b))
    same = a.exists() and b.exists() and a.read_bytes() == b.read_bytes()
    report(9, same and p1.returncode == 0 and p2.returncode == 0,
           f"two --suite all --seed 7 reports (serial, 4 workers) byte-identical: {same}, "
           f"{a.stat().st_size if a.exists() else 0} bytes")


@pytest.mark.slow
def test_10_full_default_suite(tmp_path):
    out = tmp_path / "report.json"
    proc, elapsed = _cli("--suite", "all", "--out", str(out))
    report(10, proc.returncode == 0 and elapsed < 600,
           f"--suite all exit {proc.returncode} in {elapsed:.1f}s "
           f"({proc.stdout.strip().splitlines()[-1] if proc.stdout else proc.stderr[-200:]})")


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    failed = 0
    with tempfile.TemporaryDirectory() as tmp:
        for name, fn in sorted(globals().items()):
            if not name.startswith("test_"):
                continue
            try:
                fn(Path(tmp)) if fn.__code__.co_argcount else fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
