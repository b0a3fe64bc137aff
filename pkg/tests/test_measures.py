import numpy as np
import pytest

from holevolab.entropy import QUADRATIC, STANDARD_KINDS, VON_NEUMANN, conditional_entropy, entropy
from holevolab.entropy import renyi
from holevolab.errors import PreconditionError
from holevolab.lab.instances import random_mixed_state, random_pure_state
from holevolab.measurements import (
    Ensemble,
    coarse_grain,
    computational_basis,
    fourier_basis,
    naimark_extend,
    random_basis,
    random_povm,
    random_rank1_povm,
)
from holevolab.measures import (
    biases,
    chi_location,
    coherent_info,
    holevo_chi,
    missing_info,
    outcome_probabilities,
    pinch_channel,
    shannon_mutual_info,
)
from holevolab.operators import DensityOperator, PureState, bell, ghz, partial_trace, tensor
from holevolab.operators import validate


def _qubit(vec):
    v = np.asarray(vec, dtype=complex)
    return DensityOperator(np.outer(v, v.conj()), (("b", 2),))


def test_holevo_chi_examples(rng):
    s = random_mixed_state((2,), rng, labels=("b",))
    assert abs(holevo_chi(Ensemble(np.array([0.3, 0.7]), (s, s)))) < 1e-12

    p = np.array([0.2, 0.3, 0.5])
    kets = np.eye(3)
    ens = Ensemble(p, tuple(DensityOperator(np.outer(k, k), (("b", 3),)) for k in kets))
    h = -np.sum(p * np.log2(p))
    assert holevo_chi(ens) == pytest.approx(h, abs=1e-12)

    # frozen: both states pure, so chi = S(average) = H2(cos^2(pi/8))
    ens = Ensemble(np.array([0.5, 0.5]), (_qubit([1, 0]), _qubit(np.array([1, 1]) / np.sqrt(2))))
    assert holevo_chi(ens) == pytest.approx(0.6008760, abs=1e-6)
    c2 = np.cos(np.pi / 8) ** 2
    assert holevo_chi(ens) == pytest.approx(-c2 * np.log2(c2) - (1 - c2) * np.log2(1 - c2),
                                            abs=1e-12)


def test_chi_location_ghz():
    rho = partial_trace(ghz(), "ab")
    assert chi_location(computational_basis(2), rho) == pytest.approx(1.0, abs=1e-12)
    assert abs(chi_location(fourier_basis(2), rho)) < 1e-12


def test_chi_on_pure_bipartite_is_basis_independent(rng):
    for _ in range(10):
        rho = random_pure_state((3, 2), rng, labels=("a", "b")).density()
        s_a = entropy(partial_trace(rho, "a"))
        assert abs(chi_location(random_basis(3, rng), rho) - s_a) < 1e-9
        assert abs(chi_location(random_rank1_povm(3, 5, rng), rho) - s_a) < 1e-9


def test_missing_info_examples(rng):
    rho = ghz().density()
    assert abs(missing_info(computational_basis(2), rho, "b")) < 1e-12
    ra = random_mixed_state((2,), rng, labels=("a",))
    rb = random_mixed_state((2,), rng, labels=("b",))
    P = random_povm(2, 3, rng)
    prod = tensor(ra, rb)
    h = -sum(p * np.log2(p) for p in outcome_probabilities(P, prod) if p > 0)
    assert missing_info(P, prod) == pytest.approx(h, abs=1e-10)


def test_missing_info_is_pinched_conditional_entropy(rng):
    for _ in range(20):
        rho = random_mixed_state((2, 3), rng, labels=("a", "b"))
        P = random_povm(2, 3, rng)
        out = pinch_channel(P, rho)
        assert abs(missing_info(P, rho) - conditional_entropy(out, "e", "b")) < 1e-9
        assert validate(out, 1e-10).ok


def test_pinch_examples(rng):
    ra = random_mixed_state((2,), rng, labels=("a",))
    rb = random_mixed_state((3,), rng, labels=("b",))
    P = random_povm(2, 3, rng)
    out = pinch_channel(P, tensor(ra, rb))
    p = outcome_probabilities(P, tensor(ra, rb))
    expected = np.kron(np.diag(p), rb.matrix)
    np.testing.assert_allclose(out.matrix, expected, atol=1e-12)
    out = pinch_channel(computational_basis(2), bell().density())
    np.testing.assert_allclose(out.matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-12)
    assert abs(conditional_entropy(out, "e", "b")) < 1e-12


def test_biases_examples(rng):
    ghz_rho = ghz().density()
    rep = biases(ghz_rho, computational_basis(2))
    assert abs(rep.info_bias) < 1e-12 and abs(rep.entropy_bias) < 1e-12
    assert rep.kind == VON_NEUMANN

    # b <-> c symmetric: (|psi>_ab|phi>_c-style) built by symmetrizing a random state
    psi = random_pure_state((2, 2, 2), rng).amplitudes.reshape(2, 2, 2)
    sym = psi + psi.transpose(0, 2, 1)
    sym = PureState(sym.reshape(-1) / np.linalg.norm(sym), (("a", 2), ("b", 2), ("c", 2)))
    for kind in STANDARD_KINDS:
        rep = biases(sym.density(), random_povm(2, 3, rng), kind)
        assert abs(rep.entropy_bias) < 1e-10 and abs(rep.info_bias) < 1e-10


@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 3, 4), (3, 3, 3)])
def test_information_bias_equals_entropy_bias(dims, rng):
    for _ in range(5):
        rho = random_pure_state(dims, rng).density()
        w = random_basis(dims[0], rng)
        rep = biases(rho, w)
        assert abs(rep.info_bias - rep.entropy_bias) < 1e-9


def test_coherent_info(rng):
    assert abs(coherent_info(ghz())) < 1e-12
    with pytest.raises(PreconditionError):
        coherent_info(random_mixed_state((2, 2, 2), rng))


@pytest.mark.parametrize("kind", STANDARD_KINDS + (renyi(0.2),), ids=str)
def test_coarse_graining_reduces_chi(kind, rng):
    for _ in range(10):
        rho = random_mixed_state((3, 2), rng, labels=("a", "b"))
        P = random_rank1_povm(3, 6, rng)
        coarse = coarse_grain(P, [[0, 1], [2, 3, 4], [5]])
        assert chi_location(P, rho, kind) >= chi_location(coarse, rho, kind) - 1e-9


def test_von_neumann_chi_monotone_in_subsystem(rng):
    for _ in range(20):
        rho = random_mixed_state((2, 2, 2), rng)
        P = random_povm(2, 3, rng)
        assert chi_location(P, rho, over="bc") >= chi_location(P, rho, over="b") - 1e-9


def test_holevo_bound_chain(rng):
    for _ in range(20):
        rho = random_mixed_state((2, 3), rng, labels=("a", "b"))
        P = random_povm(2, 3, rng)
        Q = random_povm(3, 2, rng).relabel("b")
        chi = chi_location(P, rho)
        hpq = shannon_mutual_info(P, Q, rho)
        from holevolab.entropy import mutual_info

        top = min(entropy(partial_trace(rho, "a")), entropy(partial_trace(rho, "b")),
                  mutual_info(rho, "a", "b"))
        assert hpq <= chi + 1e-9 and chi <= top + 1e-9
        hp = -sum(p * np.log2(p) for p in outcome_probabilities(P, rho) if p > 0)
        assert -1e-9 <= missing_info(P, rho) <= hp - hpq + 1e-9


def test_naimark_replacement_keeps_chi(rng):
    for _ in range(10):
        rho = random_mixed_state((2, 2), rng, labels=("a", "b"))
        P = random_rank1_povm(2, 4, rng)
        ext = naimark_extend(P)
        for kind in (VON_NEUMANN, QUADRATIC):
            assert abs(chi_location(P, rho, kind) - chi_location(ext.projective, ext.embed(rho),
                                                                 kind)) < 1e-9
