"""POVMs, projective decompositions and orthonormal bases on one subsystem.

A POVM is stored as a stacked ``(n, d, d)`` complex array plus the label of
the subsystem it acts on. Orthonormal bases additionally keep their vectors
as the columns of a unitary matrix.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _backend
from .config import CLIP, TOL
from .errors import DimensionError, LabelError, UnsupportedRankError, ValidationError
from .operators import (
    DensityOperator,
    Operator,
    ValidationReport,
    Violation,
    _frozen,
    as_density,
    partial_trace,
    permute,
)


@dataclass(frozen=True, eq=False)
class Povm:
    """Positive operators summing to the identity on subsystem ``label``."""

    elements: np.ndarray
    label: str = "a"

    def __post_init__(self):
        els = _frozen(self.elements)
        if els.ndim != 3 or els.shape[1] != els.shape[2] or els.shape[0] < 1:
            raise DimensionError(f"POVM elements must have shape (n, d, d), got {els.shape}")
        object.__setattr__(self, "elements", els)

    @property
    def n(self):
        return self.elements.shape[0]

    @property
    def dim(self):
        return self.elements.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, j):
        return Operator(self.elements[j], ((self.label, self.dim),))

    def ranks(self, tol=1e-9):
        vals = np.linalg.eigvalsh(_herm_stack(self.elements))
        return [int(np.sum(v > tol)) for v in vals]

    def is_rank1(self, tol=1e-9):
        return all(r <= 1 for r in self.ranks(tol))

    def relabel(self, label):
        return _replace(self, label=label)

    def transpose(self):
        """Element-wise transpose in the computational basis (a plain POVM)."""
        return Povm(np.transpose(self.elements, (0, 2, 1)), self.label)


class ProjectiveDecomposition(Povm):
    """POVM whose elements are mutually orthogonal projectors."""


@dataclass(frozen=True, eq=False)
class OrthonormalBasis(ProjectiveDecomposition):
    """Rank-1 projective decomposition; ``vectors`` holds the kets as columns."""

    vectors: Optional[np.ndarray] = None

    def __post_init__(self):
        super().__post_init__()
        if self.vectors is None:
            raise ValueError("OrthonormalBasis needs its vectors; use basis(...)")
        object.__setattr__(self, "vectors", _frozen(self.vectors))


def basis(vectors, label="a") -> OrthonormalBasis:
    """Orthonormal basis from the columns of a unitary matrix."""
    U = np.asarray(vectors, dtype=np.complex128)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionError(f"basis vectors must form a square matrix, got {U.shape}")
    elements = np.einsum("ij,kj->jik", U, U.conj())
    return OrthonormalBasis(elements, label, U)


def _replace(P, **changes):
    if isinstance(P, OrthonormalBasis):
        return OrthonormalBasis(P.elements, changes.get("label", P.label), P.vectors)
    return type(P)(P.elements, changes.get("label", P.label))


def _herm_stack(stack):
    return 0.5 * (stack + np.conj(np.transpose(stack, (0, 2, 1))))


def validate_povm(P: Povm, tol=TOL) -> ValidationReport:
    """Positivity and completeness, plus projector/Gram checks for the subclasses."""
    found = []
    herm = sup = 0.0
    stack = P.elements
    for el in stack:
        herm = max(herm, float(np.linalg.norm(el - el.conj().T, 2)))
    if herm > tol:
        found.append(Violation("hermiticity", herm, tol))
    low = float(np.linalg.eigvalsh(_herm_stack(stack)).min())
    if low < -tol:
        found.append(Violation("positivity", -low, tol))
    sup = float(np.linalg.norm(stack.sum(axis=0) - np.eye(P.dim), 2))
    if sup > tol:
        found.append(Violation("completeness", sup, tol))
    if isinstance(P, ProjectiveDecomposition):
        idem = max(float(np.linalg.norm(el @ el - el, 2)) for el in stack)
        if idem > tol:
            found.append(Violation("idempotence", idem, tol))
        orth = 0.0
        for j in range(P.n):
            for k in range(j + 1, P.n):
                orth = max(orth, float(np.linalg.norm(stack[j] @ stack[k], 2)))
        if orth > tol:
            found.append(Violation("orthogonality", orth, tol))
    if isinstance(P, OrthonormalBasis):
        U = P.vectors
        gram = float(np.linalg.norm(U.conj().T @ U - np.eye(P.dim), 2))
        if gram > tol:
            found.append(Violation("gram", gram, tol))
    return ValidationReport(tuple(found))


def ensure_valid_povm(P, tol=TOL):
    report = validate_povm(P, tol)
    if not report.ok:
        raise ValidationError(f"{type(P).__name__} invalid: {report}", report)
    return P


# --------------------------------------------------------------------------
# incompatibility and coarse-graining


def _sqrt_stack(P):
    if isinstance(P, ProjectiveDecomposition):
        return P.elements
    vals, vecs = np.linalg.eigh(_herm_stack(P.elements))
    root = np.sqrt(np.clip(vals, 0.0, None))
    return np.einsum("nij,nj,nkj->nik", vecs, root, vecs.conj())


def overlap_r(P: Povm, Q: Povm) -> float:
    """``max_jk ||sqrt(P_j) sqrt(Q_k)||^2`` in the operator norm."""
    if P.dim != Q.dim:
        raise DimensionError(f"POVMs act on dimensions {P.dim} and {Q.dim}")
    if isinstance(P, OrthonormalBasis) and isinstance(Q, OrthonormalBasis):
        return float(np.max(np.abs(P.vectors.conj().T @ Q.vectors) ** 2))
    sp, sq = _sqrt_stack(P), _sqrt_stack(Q)
    prods = np.einsum("jab,kbc->jkac", sp, sq).reshape(-1, P.dim, P.dim)
    norms = np.linalg.norm(prods, ord=2, axis=(1, 2))
    return float(np.max(norms) ** 2)


def coarse_grain(P: Povm, partition: Sequence[Sequence[int]]) -> Povm:
    """Sum elements within each group; groups must cover every index once."""
    flat = sorted(i for group in partition for i in group)
    if flat != list(range(P.n)) or any(len(g) == 0 for g in partition):
        raise ValueError(f"partition {partition} does not cover indices 0..{P.n - 1} exactly once")
    elements = np.stack([P.elements[list(g)].sum(axis=0) for g in partition])
    if isinstance(P, ProjectiveDecomposition):
        return ProjectiveDecomposition(elements, P.label)
    return Povm(elements, P.label)


# --------------------------------------------------------------------------
# standard bases


def computational_basis(d, label="a") -> OrthonormalBasis:
    return basis(np.eye(d), label)


def fourier_basis(d, label="a") -> OrthonormalBasis:
    j = np.arange(d)
    return basis(np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d), label)


def mub_pair(d, label="a") -> Tuple[OrthonormalBasis, OrthonormalBasis]:
    """Computational basis and the discrete Fourier basis; unbiased for every d."""
    if d < 2:
        raise DimensionError("mutually unbiased bases need d >= 2")
    return computational_basis(d, label), fourier_basis(d, label)


def qubit_mub_triple(label="a") -> Tuple[OrthonormalBasis, OrthonormalBasis, OrthonormalBasis]:
    """Eigenbases of the Pauli x, y and z operators, in that order."""
    s = 1 / np.sqrt(2)
    x = basis([[s, s], [s, -s]], label)
    y = basis([[s, s], [1j * s, -1j * s]], label)
    z = computational_basis(2, label)
    return x, y, z


def rotate(P: Povm, U) -> Povm:
    """Conjugate every element by the unitary ``U``."""
    U = np.asarray(U, dtype=np.complex128)
    if isinstance(P, OrthonormalBasis):
        return basis(U @ P.vectors, P.label)
    return type(P)(U @ P.elements @ U.conj().T, P.label)


def unbiased_partner(w: OrthonormalBasis, phases=None) -> OrthonormalBasis:
    """A basis mutually unbiased to ``w``: ``W D F`` with ``D`` diagonal phases."""
    d = w.dim
    D = np.ones(d) if phases is None else np.exp(1j * np.asarray(phases, dtype=float))
    return basis(w.vectors @ np.diag(D) @ fourier_basis(d).vectors, w.label)


# --------------------------------------------------------------------------
# Naimark extension


@dataclass(frozen=True, eq=False)
class NaimarkExtension:
    """Projective decomposition on H_A with ``P_j = E_a Pi_j E_a`` on the embedded space.

    H_a is embedded as the first ``d`` coordinates of H_A, so ``E_a`` is the
    diagonal projector ``diag(1, .., 1, 0, .., 0)``.
    """

    extended_dim: int
    embedding: np.ndarray
    projective: ProjectiveDecomposition
    unitary: np.ndarray
    source_dim: int

    def compressed(self):
        """``E_a Pi_j E_a`` restricted to H_a, one block per outcome."""
        d = self.source_dim
        return self.projective.elements[:, :d, :d]

    def residual(self, P: Povm):
        return float(max(np.linalg.norm(c - p, 2) for c, p in zip(self.compressed(), P.elements)))

    def embed(self, rho, label=None, new_label=None):
        """Pad subsystem ``label`` of ``rho`` from dimension d to d_A with zeros."""
        label = label or self.projective.label
        new_label = new_label or label
        rho = as_density(rho)
        order = rho.labels
        if label not in order:
            raise LabelError(f"state has no subsystem {label!r}")
        rest = tuple(lab for lab in order if lab != label)
        moved = permute(rho, (label,) + rest)
        d, n = self.source_dim, self.extended_dim
        dr = moved.dim // d
        big = np.zeros((n, dr, n, dr), dtype=np.complex128)
        big[:d, :, :d, :] = moved.matrix.reshape(d, dr, d, dr)
        dims = ((new_label, n),) + tuple(item for item in moved.dims if item[0] != label)
        return DensityOperator(big.reshape(n * dr, n * dr), dims)


def naimark_extend(N: Povm, tol=1e-9) -> NaimarkExtension:
    """Minimal Naimark extension of a rank-1 POVM.

    Each element is written ``|psi_j><psi_j|``; the ``n x d`` matrix with rows
    ``<psi_j|`` has orthonormal columns by completeness and is completed to an
    ``n x n`` unitary ``U`` with an orthonormal basis of its column
    complement. The extended projectors are ``U^dag |j><j| U``.
    """
    vals, vecs = np.linalg.eigh(_herm_stack(N.elements))
    if np.any(vals[:, :-1] > tol):
        bad = int(np.argmax(vals[:, :-1].max(axis=1)))
        raise UnsupportedRankError(f"element {bad} has rank > 1 (second eigenvalue "
                                   f"{vals[bad, -2]:.3e})")
    n, d = N.n, N.dim
    psi = vecs[:, :, -1] * np.sqrt(np.clip(vals[:, -1], 0.0, None))[:, None]  # (n, d)
    A = psi.conj()  # row j is <psi_j|
    gram = float(np.linalg.norm(A.conj().T @ A - np.eye(d), 2))
    if gram > 1e3 * TOL:
        raise ValidationError(f"POVM is not complete (column Gram residual {gram:.3e})")
    if n > d:
        full, _, _ = np.linalg.svd(A, full_matrices=True)
        U = np.concatenate([A, full[:, d:]], axis=1)
    else:
        U = A
    rows = U.conj()  # row j of conj(U) is U^dag |j>, the j-th extended ket
    E = np.zeros((n, n))
    E[:d, :d] = np.eye(d)
    pd = basis(rows.T, N.label)
    return NaimarkExtension(n, E, pd, U, d)


# --------------------------------------------------------------------------
# conditional ensembles


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Probabilities with conditional states; ``None`` marks a zero-probability outcome."""

    probs: np.ndarray
    states: Tuple[Optional[DensityOperator], ...]

    @property
    def n(self):
        return len(self.states)

    def average(self) -> DensityOperator:
        live = [(p, s) for p, s in zip(self.probs, self.states) if s is not None]
        mat = sum(p * s.matrix for p, s in live)
        return DensityOperator(mat, live[0][1].dims)

    @classmethod
    def from_blocks(cls, blocks, dims):
        """Build from unnormalized conditional operators ``p_j rho_j``."""
        probs = np.real(np.einsum("jii->j", blocks))
        states = tuple(
            DensityOperator(b / p, dims) if p > CLIP else None for b, p in zip(blocks, probs)
        )
        return cls(np.clip(probs, 0.0, None), states)


def validate_ensemble(ens: Ensemble, tol=TOL) -> ValidationReport:
    from .operators import validate

    found = []
    res = abs(float(np.sum(ens.probs)) - 1.0)
    if res > tol:
        found.append(Violation("probability sum", res, tol))
    if ens.probs.min() < -CLIP:
        found.append(Violation("nonnegative probabilities", -float(ens.probs.min()), CLIP))
    for s in ens.states:
        if s is not None:
            found.extend(validate(s, tol).violations)
    return ValidationReport(tuple(found))


def _group_labels(rho, over):
    if over is None:
        return None
    if isinstance(over, str) and over not in rho.labels:
        return tuple(over)
    return (over,) if isinstance(over, str) else tuple(over)


def conditional_blocks(P: Povm, rho, over=None):
    """Unnormalized conditional operators ``Tr_a[(P_j x I) rho]`` and their dims.

    ``over`` restricts the remaining systems (e.g. ``"b"`` for rho_abc); by
    default every subsystem other than ``P.label`` is kept.
    """
    rho = as_density(rho)
    if P.label not in rho.labels:
        raise LabelError(f"POVM acts on {P.label!r}, state has {rho.labels}")
    if rho.dim_of(P.label) != P.dim:
        raise DimensionError(f"POVM dimension {P.dim} != dim({P.label}) = {rho.dim_of(P.label)}")
    over = _group_labels(rho, over)
    if over is None:
        rest = tuple(lab for lab in rho.labels if lab != P.label)
    else:
        rest = over
    if not rest:
        raise LabelError("conditional ensemble needs at least one remaining subsystem")
    red = partial_trace(rho, (P.label,) + rest)
    red = permute(red, (P.label,) + tuple(lab for lab in red.labels if lab != P.label))
    dr = red.dim // P.dim
    blocks = _backend.conditional_blocks(P.elements, red.matrix, P.dim, dr)
    dims = tuple(item for item in red.dims if item[0] != P.label)
    return blocks, dims


def conditional_ensemble(P: Povm, rho, over=None) -> Ensemble:
    """``p_j = Tr(P_j rho_a)`` and ``rho_bj = Tr_a(P_j rho_ab) / p_j``."""
    blocks, dims = conditional_blocks(P, rho, over)
    return Ensemble.from_blocks(blocks, dims)


# --------------------------------------------------------------------------
# random instances


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(d, seed=None):
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_basis(d, seed=None, label="a") -> OrthonormalBasis:
    return basis(random_unitary(d, seed), label)


def random_rank1_povm(d, n, seed=None, label="a") -> Povm:
    """Rank-1 POVM whose Naimark extension is a Haar basis of C^n."""
    if n < d:
        raise DimensionError(f"a rank-1 POVM on C^{d} needs at least {d} elements, got {n}")
    U = random_unitary(n, seed)
    rows = U[:, :d]  # orthonormal columns; row j gives <psi_j|
    psi = rows.conj()
    return Povm(np.einsum("ji,jk->jik", psi, psi.conj()), label)


def random_projective(d, ranks, seed=None, label="a") -> ProjectiveDecomposition:
    ranks = [int(r) for r in ranks]
    if sum(ranks) != d or min(ranks) < 1:
        raise DimensionError(f"ranks {ranks} must be positive and sum to {d}")
    U = random_unitary(d, seed)
    out, start = [], 0
    for r in ranks:
        cols = U[:, start:start + r]
        out.append(cols @ cols.conj().T)
        start += r
    return ProjectiveDecomposition(np.stack(out), label)


def random_povm(d, n, seed=None, label="a", fine=None) -> Povm:
    """General POVM with ``n`` outcomes: a random rank-1 POVM with ``fine``
    elements randomly grouped into ``n`` nonempty sets."""
    rng = _rng(seed)
    fine = fine or max(n, d) + int(rng.integers(1, d + 2))
    if fine < n:
        raise DimensionError(f"cannot group {fine} elements into {n} outcomes")
    base = random_rank1_povm(d, fine, rng, label)
    perm = rng.permutation(fine)
    cuts = np.sort(rng.choice(np.arange(1, fine), size=n - 1, replace=False)) if n > 1 else []
    groups = [list(g) for g in np.split(perm, cuts)]
    return coarse_grain(base, groups)
