import json
from dataclasses import replace

import numpy as np
import pytest

from holevolab.entropy import PLUS_INFINITY, QUADRATIC, VON_NEUMANN, renyi
from holevolab.errors import DomainError, EvaluatorAbort, LabelError, PreconditionError
from holevolab.lab import relations
from holevolab.lab.instances import (
    Instance,
    perfect_presence_state,
    present_and_absent_state,
    random_mixed_state,
)
from holevolab.lab.relations import EQ, GE, REGISTRY, Check, evaluate, sample
from holevolab.lab.suite import (
    DEFAULT_DIMS,
    example_blocks,
    run_suite,
    search_counterexample_eq37,
    trial_seed,
)
from holevolab.measurements import unbiased_partner
from holevolab.measures import chi_location, missing_info
from holevolab.operators import DensityOperator, partial_trace

CORE_RELATIONS = {
    "lemma1_chain", "thm2_basis_invariance", "thm3_bias_invariance", "lemma4_truncation_eq",
    "lemma4_truncation_ineq", "thm5_povm", "thm5_single", "thm5_bases", "thm5_mub",
    "cor6_channel", "cor7_single_system", "thm8_suppression", "thm8_equal_presence",
    "cor9_no_splitting", "thm10_presence", "thm11_decoupling", "thm11_pure", "thm11_channel",
    "eq33_ssa", "eq37_subsystem",
}


def test_registry_contents():
    assert CORE_RELATIONS <= set(REGISTRY)
    assert {"pinching_identity", "channel_duality"} <= set(REGISTRY)


@pytest.mark.parametrize("rid", sorted(REGISTRY))
@pytest.mark.parametrize("dims", DEFAULT_DIMS, ids=lambda d: "x".join(map(str, d)))
def test_relation_holds_on_samples(rid, dims):
    rel = REGISTRY[rid]
    if rel.applicable(dims):
        pytest.skip(rel.applicable(dims))
    for t in range(3):
        res = evaluate(rid, sample(rid, dims, trial_seed(1, rid, dims, t)))
        assert res.passed, res


def test_square_b_relations_skip_small_b():
    assert REGISTRY["thm8_equal_presence"].applicable((3, 2, 2))
    assert REGISTRY["thm8_equal_presence"].applicable((2, 3, 4)) is None
    report = run_suite(["thm8_equal_presence"], [(3, 2, 2)], trials=2)
    assert report.blocks[0].skipped and report.ok


def test_constructed_states(rng):
    rho, w = perfect_presence_state(2, 4, 2, rng)
    assert abs(missing_info(w, partial_trace(rho, "ab"), "b")) < 1e-10
    assert np.linalg.matrix_rank(rho.matrix, tol=1e-10) == 2
    psi, w = present_and_absent_state(2, 3, 2, rng)
    rho = psi.density()
    assert abs(missing_info(w, rho, "b")) < 1e-10
    assert abs(chi_location(w, rho, over="c")) < 1e-10


def test_failing_instance_is_reported(rng):
    inst = sample("thm8_equal_presence", (2, 2, 2), 5)
    rho = inst.state.matrix
    noisy = DensityOperator((1 - 1e-3) * rho + 1e-3 * np.eye(4) / 4, inst.state.dims)
    res = evaluate("thm8_equal_presence", replace(inst, state=noisy))
    assert not res.passed
    assert res.mode == EQ and abs(res.slack) > 1e-8


def test_preconditions(rng):
    inst = sample("thm3_bias_invariance", (2, 2, 2), 3)
    mixed = random_mixed_state((2, 2, 2), rng)
    with pytest.raises(PreconditionError, match="pure"):
        evaluate("thm3_bias_invariance", replace(inst, state=mixed))
    inst = sample("thm5_mub", (2, 2, 2), 3)
    povms = dict(inst.povms)
    povms["v"] = povms["w"]
    with pytest.raises(PreconditionError, match="unbiased"):
        evaluate("thm5_mub", replace(inst, povms=povms))
    with pytest.raises(LabelError):
        evaluate("no_such_relation", inst)


def test_infinity_handling(monkeypatch):
    inst = Instance((2, 2, 2))

    def fake(checks):
        rel = REGISTRY["eq33_ssa"]
        monkeypatch.setitem(REGISTRY, "eq33_ssa", replace(rel, evaluator=lambda _: checks))

    fake([Check("inf>=x", PLUS_INFINITY, 1.0, GE), Check("x>=y", 1.0, 0.5, GE)])
    res = evaluate("eq33_ssa", inst)
    assert res.passed and res.check == "x>=y" and res.checks == 2
    fake([Check("x>=inf", 1.0, PLUS_INFINITY, GE)])
    with pytest.raises(EvaluatorAbort):
        evaluate("eq33_ssa", inst)
    fake([Check("nan", float("nan"), 0.0, EQ)])
    with pytest.raises(EvaluatorAbort):
        evaluate("eq33_ssa", inst)


def test_worst_check_is_reported(monkeypatch):
    rel = REGISTRY["eq33_ssa"]
    checks = [Check("loose", 1.0, 0.0, GE), Check("tight", 1.0, 1.0 + 5e-10, GE),
              Check("eq", 2.0, 2.0, EQ)]
    monkeypatch.setitem(REGISTRY, "eq33_ssa", replace(rel, evaluator=lambda _: checks))
    res = evaluate("eq33_ssa", Instance((2, 2, 2)))
    assert res.check == "tight" and res.passed and res.slack == pytest.approx(-5e-10)


def test_trial_seed_properties():
    a = trial_seed(42, "thm5_povm", (2, 2, 2), 0)
    assert a == trial_seed(42, "thm5_povm", (2, 2, 2), 0)
    others = {trial_seed(42, "thm5_povm", (2, 2, 2), 1), trial_seed(43, "thm5_povm", (2, 2, 2), 0),
              trial_seed(42, "thm5_single", (2, 2, 2), 0), trial_seed(42, "thm5_povm", (2, 3, 4), 0)}
    assert a not in others and len(others) == 4


def test_suite_is_order_independent(tmp_path):
    ids = ["thm5_povm", "eq33_ssa", "channel_duality"]
    dims = [(2, 2, 2), (3, 2, 2)]
    serial = run_suite(ids, dims, trials=4, seed=3)
    parallel = run_suite(ids, dims, trials=4, seed=3, workers=3)
    assert serial.to_json() == parallel.to_json()
    single = run_suite(["eq33_ssa"], [(3, 2, 2)], trials=4, seed=3)
    assert single.blocks[0].to_dict() == serial.blocks[3].to_dict()


def test_report_formats(tmp_path):
    report = run_suite(["eq33_ssa"], [(2, 2, 2)], trials=3, seed=0)
    data = json.loads(report.to_json())
    assert data["ok"] and data["blocks"][0]["trials"] == 3
    assert set(data["blocks"][0]) >= {"pass_rate", "min_slack", "max_abs_slack", "worst_seed"}
    lines = report.to_csv().splitlines()
    assert lines[0].startswith("relation,dims,seed") and len(lines) == 4
    report.write(tmp_path / "r.csv", "csv")
    assert (tmp_path / "r.csv").read_text() == report.to_csv()


def test_suite_argument_errors():
    with pytest.raises(ValueError):
        run_suite(["eq33_ssa"], trials=0)
    with pytest.raises(ValueError):
        run_suite(["nope"])


def test_example_blocks_pass():
    blocks = example_blocks()
    assert [b.relation for b in blocks] == ["example_ghz", "example_ghz_mub_tightness",
                                           "example_xy_povm", "example_z_axis_triple"]
    for b in blocks:
        assert b.ok, b.to_dict()


def test_counterexample_search():
    with pytest.raises(DomainError):
        search_counterexample_eq37(VON_NEUMANN, 10)
    found = search_counterexample_eq37(QUADRATIC, 2000, seed=0)
    assert found.found and found.violation > 1e-6
    rho, P = found.state, found.povm
    gap = chi_location(P, rho, QUADRATIC, over="b") - chi_location(P, rho, QUADRATIC, over="bc")
    assert gap == pytest.approx(found.violation)
    none = search_counterexample_eq37(renyi(0.5), 50, seed=0)
    assert not none.found and none.to_dict()["status"] == "not found"


def test_unbiased_partner_used_for_alpha():
    # the alpha term in the no-splitting check ranges over each basis and its partner
    inst = sample("cor9_no_splitting", (2, 2, 2), 0)
    w = inst.povms["w0"]
    assert abs(relations.overlap_r(w, unbiased_partner(w)) - 0.5) < 1e-12
