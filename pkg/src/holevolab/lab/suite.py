"""Randomized relation suites, fixed worked examples and counterexample search."""

import csv
import io
import json
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .. import config
from ..entropy import VON_NEUMANN, EntropyKind, entropy
from ..errors import DomainError
from ..measurements import Povm, computational_basis, fourier_basis, qubit_mub_triple, random_basis
from ..measurements import random_rank1_povm
from ..measures import chi_location, missing_info, outcome_probabilities
from ..entropy import _shannon
from ..operators import DensityOperator, ghz
from .instances import Instance, random_mixed_state
from .relations import EQ, GE, REGISTRY, Check, RelationResult, evaluate, sample

DEFAULT_DIMS = ((2, 2, 2), (2, 3, 4), (3, 3, 3))
DEFAULT_TRIALS = 100
DEFAULT_SEED = 42
TOL_EQ = 1e-8
TOL_INEQ = 1e-9
TIGHT_TOL = 1e-9
SAMPLER_NOTE = ("states: Haar pure and induced-measure mixed (reference of equal dimension); "
                "rank-1 POVMs: first columns of a Haar unitary; general POVMs: random "
                "coarse-graining of a rank-1 POVM; channels: Haar isometries")


def _version():
    from .. import __version__

    return __version__


def trial_seed(seed, relation, dims, trial) -> int:
    """Per-trial seed, independent of evaluation order."""
    ss = np.random.SeedSequence([int(seed), zlib.crc32(relation.encode()), *map(int, dims),
                                 int(trial)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _margin(r: RelationResult):
    return r.tolerance - abs(r.slack) if r.mode == EQ else r.slack + r.tolerance


@dataclass
class RelationBlock:
    """All results for one relation at one dims triple."""

    relation: str
    dims: tuple
    results: List[RelationResult] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def passed(self):
        return sum(r.passed for r in self.results)

    @property
    def ok(self):
        return self.passed == len(self.results)

    def summary(self):
        out = {"relation": self.relation, "dims": list(self.dims), "trials": len(self.results),
               "passed": self.passed, "skipped": self.skipped}
        if self.results:
            worst = min(self.results, key=_margin)
            out.update(pass_rate=self.passed / len(self.results),
                       min_slack=min(r.slack for r in self.results),
                       max_abs_slack=max(abs(r.slack) for r in self.results),
                       worst_seed=worst.seed, worst_check=worst.check)
        else:
            out.update(pass_rate=None, min_slack=None, max_abs_slack=None, worst_seed=None,
                       worst_check=None)
        return out

    def to_dict(self):
        out = self.summary()
        out["results"] = [r.to_dict() for r in self.results]
        return out


@dataclass
class SuiteReport:
    config: dict
    blocks: List[RelationBlock] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(b.ok for b in self.blocks)

    def to_dict(self):
        return {"version": _version(), "config": self.config,
                "ok": self.ok, "blocks": [b.to_dict() for b in self.blocks],
                "extras": self.extras}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        cols = ["relation", "dims", "seed", "check", "mode", "lhs", "rhs", "slack", "tolerance",
                "passed"]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for b in self.blocks:
            for r in b.results:
                writer.writerow([r.relation, "x".join(map(str, b.dims)), r.seed, r.check, r.mode,
                                 repr(r.lhs), repr(r.rhs), repr(r.slack), repr(r.tolerance),
                                 int(r.passed)])
        return buf.getvalue()

    def write(self, path, fmt="json"):
        """Write atomically: temporary file in the target directory, then rename."""
        from ..io import atomic_write

        atomic_write(path, self.to_json() if fmt == "json" else self.to_csv())

    def summary_lines(self):
        lines = []
        for b in self.blocks:
            s = b.summary()
            dims = "x".join(map(str, b.dims)) if b.dims else "-"
            if b.skipped:
                lines.append(f"SKIP {b.relation:26s} {dims:7s} {b.skipped}")
                continue
            status = "PASS" if b.ok else "FAIL"
            lines.append(f"{status} {b.relation:26s} {dims:7s} {s['passed']}/{s['trials']} "
                         f"min_slack={s['min_slack']:.3e} worst_seed={s['worst_seed']}")
        return lines


# --------------------------------------------------------------------------


def _run_block(task):
    relation, dims, trials, seed, tol_eq, tol_ineq, base = task
    block = RelationBlock(relation, tuple(dims))
    reason = REGISTRY[relation].applicable(dims)
    if reason:
        block.skipped = reason
        return block
    with config.log_base(base):
        for t in range(trials):
            s = trial_seed(seed, relation, dims, t)
            block.results.append(evaluate(relation, sample(relation, dims, s), tol_eq, tol_ineq))
    return block


def run_suite(relations=None, dims=DEFAULT_DIMS, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
              tol_eq=TOL_EQ, tol_ineq=TOL_INEQ, workers=None) -> SuiteReport:
    """Evaluate every relation at every dims triple on ``trials`` random instances.

    The report depends only on the arguments (and the log base); results are
    identical whether blocks run serially or on ``workers`` processes.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    relations = list(REGISTRY) if relations is None else list(relations)
    for rid in relations:
        if rid not in REGISTRY:
            raise ValueError(f"unknown relation {rid!r}")
    dims = [tuple(int(x) for x in d) for d in dims]
    base = config.get_log_base()
    cfg = {"suite": "relations", "relations": relations, "dims": [list(d) for d in dims],
           "trials": int(trials), "seed": int(seed), "tolerance_eq": tol_eq,
           "tolerance_ineq": tol_ineq, "log_base": "e" if base == np.e else base,
           "sampler": SAMPLER_NOTE}
    tasks = [(rid, d, trials, seed, tol_eq, tol_ineq, base) for rid in relations for d in dims]
    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_run_block, tasks))
    else:
        blocks = [_run_block(t) for t in tasks]
    return SuiteReport(cfg, blocks)


# --------------------------------------------------------------------------
# fixed worked examples


def _fixed(relation, checks, tol_eq=TIGHT_TOL, tol_ineq=TOL_INEQ, dims=None, tols=None):
    """One result per check; equalities are held to ``tol_eq`` unless ``tols`` overrides."""
    tols = tols or {}
    block = RelationBlock(relation, tuple(dims) if dims else ())
    for c in checks:
        slack = c.lhs - c.rhs
        tol = tols.get(c.name, tol_eq if c.mode == EQ else tol_ineq)
        ok = abs(slack) <= tol if c.mode == EQ else slack >= -tol
        block.results.append(RelationResult(relation, c.name, c.mode, float(c.lhs), float(c.rhs),
                                            float(slack), bool(ok), tol, None,
                                            tuple(dims) if dims else None, 1))
    return block


def xy_plane_povm(label="a") -> Povm:
    """The four x and y eigenstates of a qubit, each weighted by 1/2."""
    x, y, _ = qubit_mub_triple(label)
    vecs = np.concatenate([x.vectors, y.vectors], axis=1)
    return Povm(0.5 * np.einsum("ij,kj->jik", vecs, vecs.conj()), label)


def z_axis_state(p0=0.25) -> DensityOperator:
    return DensityOperator(np.diag([p0, 1.0 - p0]), (("a", 2),))


def example_blocks():
    log = config.log
    rho = ghz().density()
    z, x = computational_basis(2), fourier_basis(2)
    chi = lambda P, over: chi_location(P, rho, over=over)
    ghz_block = _fixed("example_ghz", [
        Check("chi(z,b)=1 bit", chi(z, "b"), log(2), EQ),
        Check("chi(x,c)=0", chi(x, "c"), 0.0, EQ),
        Check("dchi(z;b,c)=0", chi(z, "b") - chi(z, "c"), 0.0, EQ),
        Check("dchi(x;b,c)=0", chi(x, "b") - chi(x, "c"), 0.0, EQ),
    ], dims=(2, 2, 2))
    mub = evaluate("thm5_mub", Instance((2, 2, 2), rho, povms={"v": x, "w": z}), TIGHT_TOL,
                   TOL_INEQ)
    tight = _fixed("example_ghz_mub_tightness", [
        Check("H(x|b)+H(z|c)=log 2 (tight)", mub.lhs, mub.rhs, EQ)], dims=(2, 2, 2))

    P = xy_plane_povm()
    hp_b, hz_c = missing_info(P, rho, "b"), missing_info(z, rho, "c")
    ex2 = _fixed("example_xy_povm", [
        Check("H(P|b)+H(z|c)>=log 4", hp_b + hz_c, log(4), GE),
        Check("H(z|c)=0", hz_c, 0.0, EQ),
        Check("chi(P,b)=0", chi_location(P, rho, over="b"), 0.0, EQ),
        Check("H(P|b)=log 4", hp_b, log(4), EQ),
    ], dims=(2, 2, 2))

    single = z_axis_state(0.25)
    total = sum(_shannon(outcome_probabilities(B, single)) for B in qubit_mub_triple())
    z_axis = _fixed("example_z_axis_triple", [
        Check("H(x)+H(y)+H(z)=2 log 2+S (tight)", total, 2 * log(2) + entropy(single), EQ),
        Check("H(x)+H(y)+H(z)=2.811278 bits", total, 2.811278 * log(2), EQ),
    ], dims=(2, 1, 1), tols={"H(x)+H(y)+H(z)=2.811278 bits": 1e-6})
    return [ghz_block, tight, ex2, z_axis]


def worked_examples() -> SuiteReport:
    base = config.get_log_base()
    cfg = {"suite": "paper-examples", "log_base": "e" if base == np.e else base}
    return SuiteReport(cfg, example_blocks())


# --------------------------------------------------------------------------
# subsystem monotonicity for other entropy kinds


@dataclass(frozen=True)
class Counterexample:
    found: bool
    kind: str
    trials: int
    violation: Optional[float] = None
    seed: Optional[int] = None
    state: Optional[DensityOperator] = None
    povm: Optional[Povm] = None

    def to_dict(self):
        out = {"found": self.found, "kind": self.kind, "trials": self.trials,
               "violation": self.violation, "seed": self.seed}
        if self.found:
            out["state"] = {"re": self.state.matrix.real.tolist(),
                            "im": self.state.matrix.imag.tolist()}
            out["povm"] = {"re": self.povm.elements.real.tolist(),
                           "im": self.povm.elements.imag.tolist()}
        else:
            out["status"] = "not found"
        return out


def search_counterexample_eq37(kind: EntropyKind, budget=10_000, seed=0, dims=(2, 2, 2),
                               threshold=1e-6) -> Counterexample:
    """Look for ``chi_K(P,bc) < chi_K(P,b) - threshold``.

    States are reduced Haar vectors with a random reference dimension (so
    ranks vary), POVMs alternate between random bases and rank-1 POVMs.
    Not finding a witness within ``budget`` is reported, not asserted.
    """
    if kind == VON_NEUMANN:
        raise DomainError("von Neumann chi is monotone under discarding subsystems")
    d_a = dims[0]
    total = int(np.prod(dims))
    for t in range(int(budget)):
        s = trial_seed(seed, f"eq37_search/{kind}", dims, t)
        rng = np.random.default_rng(s)
        rho = random_mixed_state(dims, rng, ref_dim=int(rng.integers(1, total + 1)))
        if t % 2:
            P = random_basis(d_a, rng)
        else:
            P = random_rank1_povm(d_a, int(rng.integers(d_a + 1, 2 * d_a + 1)), rng)
        gap = chi_location(P, rho, kind, over="b") - chi_location(P, rho, kind, over="bc")
        if gap > threshold:
            return Counterexample(True, str(kind), t + 1, float(gap), s, rho, P)
    return Counterexample(False, str(kind), int(budget))
