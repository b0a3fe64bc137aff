import numpy as np
import pytest

from holevolab.errors import DimensionError, DomainError, LabelError
from holevolab.lab.instances import random_mixed_state, random_pure_state
from holevolab.operators import (
    DensityOperator,
    Operator,
    PureState,
    bell,
    identity,
    make_dims,
    matrix_function,
    maximally_mixed,
    partial_trace,
    permute,
    projector,
    purify,
    sup_norm,
    tensor,
    validate,
)


def _herm(rng, d):
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return m + m.conj().T


def test_tensor_identities():
    out = tensor(identity(2, "a"), identity(3, "b"))
    np.testing.assert_allclose(out.matrix, np.eye(6))
    assert out.dims == (("a", 2), ("b", 3))
    out = tensor(Operator(np.diag([1, 0]), (("a", 2),)), Operator(np.diag([0, 1]), (("b", 2),)))
    np.testing.assert_allclose(out.matrix, np.diag([0, 1, 0, 0]))


def test_tensor_trace_factorizes(rng):
    A = Operator(_herm(rng, 2), (("a", 2),))
    B = Operator(_herm(rng, 3), (("b", 3),))
    assert abs(tensor(A, B).trace() - A.trace() * B.trace()) < 1e-12


def test_tensor_rejects_shared_label():
    with pytest.raises(LabelError):
        tensor(identity(2, "a"), identity(2, "a"))


def test_dims_validation():
    with pytest.raises(DimensionError):
        make_dims([("a", 0)])
    with pytest.raises(LabelError):
        make_dims([("a", 2), ("a", 3)])
    with pytest.raises(DimensionError):
        Operator(np.eye(3), (("a", 2),))


def test_matrices_are_read_only():
    rho = maximally_mixed(2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0


def test_partial_trace_product_and_bell(rng):
    ra = random_mixed_state((2,), rng, labels=("a",))
    rb = random_mixed_state((3,), rng, labels=("b",))
    np.testing.assert_allclose(partial_trace(tensor(ra, rb), "a").matrix, ra.matrix, atol=1e-12)
    np.testing.assert_allclose(partial_trace(bell(), "a").matrix, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_schmidt_spectra(rng):
    psi = random_pure_state((2, 3), rng, labels=("a", "b"))
    ea = np.sort(partial_trace(psi, "a").eigenvalues())
    eb = np.sort(partial_trace(psi, "b").eigenvalues())[-2:]
    np.testing.assert_allclose(ea, eb, atol=1e-10)


def test_partial_trace_unknown_label():
    with pytest.raises(LabelError):
        partial_trace(bell(), "z")


def test_partial_trace_nested(rng):
    rho = random_mixed_state((2, 3, 2), rng)
    nested = partial_trace(partial_trace(rho, "ab"), "a")
    np.testing.assert_allclose(nested.matrix, partial_trace(rho, "a").matrix, atol=1e-10)


def test_partial_trace_linear_on_hermitian(rng):
    dims = (("a", 2), ("b", 3))
    X, Y = Operator(_herm(rng, 6), dims), Operator(_herm(rng, 6), dims)
    Z = Operator(2.0 * X.matrix - 0.5 * Y.matrix, dims)
    lhs = partial_trace(Z, "a").matrix
    rhs = 2.0 * partial_trace(X, "a").matrix - 0.5 * partial_trace(Y, "a").matrix
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)
    assert abs(partial_trace(X, "b").trace() - X.trace()) < 1e-10


def test_permute_round_trip(rng):
    rho = random_mixed_state((2, 3, 2), rng)
    moved = permute(rho, ("c", "a", "b"))
    assert moved.labels == ("c", "a", "b")
    back = permute(moved, ("a", "b", "c"))
    np.testing.assert_allclose(back.matrix, rho.matrix, atol=1e-14)
    np.testing.assert_allclose(partial_trace(moved, "b").matrix, partial_trace(rho, "b").matrix,
                               atol=1e-12)
    with pytest.raises(LabelError):
        permute(rho, ("a", "b"))


def test_purify_pure_and_mixed(rng):
    psi = random_pure_state((3,), rng, labels=("a",))
    pure = purify(psi.density())
    back = partial_trace(pure, "a")
    np.testing.assert_allclose(back.matrix, psi.density().matrix, atol=1e-10)
    half = purify(maximally_mixed(2))
    np.testing.assert_allclose(partial_trace(half, "r").matrix, np.eye(2) / 2, atol=1e-12)


def test_purify_rank3_qutrit(rng):
    rho = random_mixed_state((3,), rng, labels=("a",), ref_dim=3)
    pure = purify(rho)
    assert abs(np.linalg.norm(pure.amplitudes) - 1) < 1e-10
    np.testing.assert_allclose(partial_trace(pure, "a").matrix, rho.matrix, atol=1e-10)


def test_matrix_function_examples():
    P = projector(np.array([1, 1]) / np.sqrt(2))
    np.testing.assert_allclose(matrix_function(P, np.sqrt, "skip").matrix, P.matrix, atol=1e-12)
    np.testing.assert_allclose(matrix_function(maximally_mixed(2), np.log2).matrix, -np.eye(2),
                               atol=1e-12)
    out = matrix_function(np.diag([0.25, 0.75]), np.log2)
    np.testing.assert_allclose(out, np.diag([-2.0, np.log2(0.75)]), atol=1e-12)


def test_matrix_function_zero_policies():
    P = np.diag([1.0, 0.0])
    out = matrix_function(P, np.log, "skip")
    np.testing.assert_allclose(out, np.zeros((2, 2)), atol=1e-15)
    with pytest.raises(DomainError):
        matrix_function(P, np.log, "signal")


def test_sup_norm_examples():
    assert sup_norm(np.eye(4)) == pytest.approx(1.0)
    v = np.array([1, 1j]) / np.sqrt(2)
    w = np.array([0.6, 0.8])
    assert sup_norm(np.outer(v, w.conj())) == pytest.approx(1.0)
    pz = np.diag([1.0, 0.0])
    px = np.full((2, 2), 0.5)
    assert sup_norm(pz @ px) ** 2 == pytest.approx(0.5, abs=1e-12)


def test_validate_reports():
    assert validate(maximally_mixed(2)).ok
    bad = validate(DensityOperator(np.diag([1.5, -0.5]), (("a", 2),)))
    assert [v.invariant for v in bad.violations] == ["positivity"]
    assert bad.violations[0].residual == pytest.approx(0.5)
    m = np.eye(2) / 2 + np.array([[0, 1e-6], [0, 0]])
    rep = validate(DensityOperator(m, (("a", 2),)), tol=1e-10)
    assert "hermiticity" in [v.invariant for v in rep.violations]
    assert not validate(PureState(np.array([1.0, 1.0]), (("a", 2),))).ok
