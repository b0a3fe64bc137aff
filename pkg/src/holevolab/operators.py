"""Dense operators on labelled tensor-product spaces.

Every operator carries a dims profile, an ordered tuple of
``(label, dimension)`` pairs whose order is the tensor order of the matrix.
Values are immutable: matrices are copied on construction and marked
read-only.
"""

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Tuple, Union

import numpy as np

from . import _backend
from .config import CLIP, TOL
from .errors import DimensionError, DomainError, LabelError, ValidationError

Dims = Tuple[Tuple[str, int], ...]


def make_dims(spec) -> Dims:
    """Normalize ``[("a", 2), ("b", 3)]`` (or a ``{label: dim}`` dict) to a Dims tuple."""
    items = spec.items() if isinstance(spec, dict) else spec
    out = []
    for item in items:
        label, dim = item
        label = str(label)
        if int(dim) != dim or int(dim) < 1:
            raise DimensionError(f"subsystem {label!r} has invalid dimension {dim!r}")
        out.append((label, int(dim)))
    labels = [lab for lab, _ in out]
    if len(set(labels)) != len(labels):
        raise LabelError(f"duplicate subsystem labels in {labels}")
    if not out:
        raise DimensionError("dims profile is empty")
    return tuple(out)


def total_dim(dims: Dims) -> int:
    return int(np.prod([d for _, d in dims]))


def _frozen(array, dtype=np.complex128):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix annotated with a dims profile.

    Used for general Hermitian and positive operators (POVM elements,
    Kraus-derived quantities, the arguments of relative entropy).
    """

    matrix: np.ndarray
    dims: Dims

    def __post_init__(self):
        dims = make_dims(self.dims)
        mat = _frozen(self.matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError(f"operator matrix must be square, got shape {mat.shape}")
        if mat.shape[0] != total_dim(dims):
            raise DimensionError(f"matrix dimension {mat.shape[0]} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    @property
    def labels(self):
        return tuple(lab for lab, _ in self.dims)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def dim_of(self, label):
        for lab, d in self.dims:
            if lab == label:
                return d
        raise LabelError(f"unknown subsystem label {label!r}; have {self.labels}")

    def trace(self):
        return complex(np.trace(self.matrix))

    def eigenvalues(self):
        """Ascending eigenvalues of the Hermitian part."""
        return np.linalg.eigvalsh(_herm(self.matrix))

    def relabel(self, mapping):
        dims = tuple((mapping.get(lab, lab), d) for lab, d in self.dims)
        return type(self)(self.matrix, dims)


class DensityOperator(Operator):
    """Positive, unit-trace Hermitian operator.

    Construction checks shapes only; call :func:`validate` or
    :func:`ensure_valid` to check positivity and normalization.
    """


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector on a labelled tensor-product space."""

    amplitudes: np.ndarray
    dims: Dims

    def __post_init__(self):
        dims = make_dims(self.dims)
        vec = _frozen(np.asarray(self.amplitudes).reshape(-1))
        if vec.shape[0] != total_dim(dims):
            raise DimensionError(f"state length {vec.shape[0]} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", vec)

    @property
    def labels(self):
        return tuple(lab for lab, _ in self.dims)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def density(self) -> DensityOperator:
        v = self.amplitudes
        return DensityOperator(np.outer(v, v.conj()), self.dims)


AnyOperator = Union[Operator, PureState]


def _herm(m):
    return 0.5 * (m + m.conj().T)


def as_density(op) -> DensityOperator:
    if isinstance(op, PureState):
        return op.density()
    if isinstance(op, DensityOperator):
        return op
    return DensityOperator(op.matrix, op.dims)


# --------------------------------------------------------------------------
# constructors


def ket(amplitudes, dims) -> PureState:
    v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    return PureState(v / np.linalg.norm(v), dims)


def maximally_mixed(d, label="a") -> DensityOperator:
    return DensityOperator(np.eye(d) / d, ((label, d),))


def identity(d, label="a") -> Operator:
    return Operator(np.eye(d), ((label, d),))


def projector(vector, label="a") -> Operator:
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    return Operator(np.outer(v, v.conj()), ((label, v.shape[0]),))


def ghz(n=3, d=2, labels="abc") -> PureState:
    """``(|00..0> + |11..1> + ...)/sqrt(d)`` on ``n`` systems of dimension ``d``."""
    amps = np.zeros(d ** n, dtype=np.complex128)
    step = sum(d ** k for k in range(n))
    for j in range(d):
        amps[j * step] = 1.0
    return ket(amps, tuple((labels[k], d) for k in range(n)))


def bell(labels="ab") -> PureState:
    return ghz(2, 2, labels)


# --------------------------------------------------------------------------
# algebra


def tensor(A: Operator, B: Operator) -> Operator:
    """Kronecker product; dims profiles are concatenated and must not share labels."""
    if isinstance(A, PureState) and isinstance(B, PureState):
        return PureState(np.kron(A.amplitudes, B.amplitudes), A.dims + B.dims)
    clash = set(A.labels) & set(B.labels)
    if clash:
        raise LabelError(f"labels {sorted(clash)} appear on both factors")
    cls = DensityOperator if isinstance(A, DensityOperator) and isinstance(B, DensityOperator) else Operator
    return cls(np.kron(A.matrix, B.matrix), A.dims + B.dims)


def _keep_mask(dims, keep):
    keep = {keep} if isinstance(keep, str) and keep in dict(dims) else set(keep)
    labels = [lab for lab, _ in dims]
    unknown = keep - set(labels)
    if unknown:
        raise LabelError(f"unknown subsystem labels {sorted(unknown)}; have {labels}")
    return tuple(lab in keep for lab in labels)


def partial_trace(rho, keep: Iterable[str]):
    """Trace out every subsystem not named in ``keep``.

    ``keep`` may be a single label, an iterable of labels, or a string of
    one-character labels such as ``"ab"``. Kept factors stay in dims order.
    """
    if isinstance(rho, PureState):
        rho = rho.density()
    mask = _keep_mask(rho.dims, keep)
    if not any(mask):
        raise LabelError("partial_trace must keep at least one subsystem")
    if all(mask):
        return rho
    sizes = tuple(d for _, d in rho.dims)
    out = _backend.partial_trace(rho.matrix, sizes, mask)
    dims = tuple(item for item, m in zip(rho.dims, mask) if m)
    return type(rho)(out, dims)


def permute(op, order: Sequence[str]):
    """Reorder tensor factors explicitly; ``order`` must be a permutation of the labels."""
    order = tuple(order)
    labels = op.labels
    if sorted(order) != sorted(labels) or len(order) != len(labels):
        raise LabelError(f"permutation {order} does not match labels {labels}")
    if order == labels:
        return op
    idx = [labels.index(lab) for lab in order]
    sizes = [d for _, d in op.dims]
    dims = tuple(op.dims[i] for i in idx)
    if isinstance(op, PureState):
        t = op.amplitudes.reshape(sizes).transpose(idx)
        return PureState(t.reshape(-1), dims)
    n = len(sizes)
    t = op.matrix.reshape(sizes * 2).transpose(idx + [i + n for i in idx])
    return type(op)(t.reshape(op.dim, op.dim), dims)


def purify(rho, reference="r") -> PureState:
    """Purification on ``rho.dims + ((reference, d),)``.

    Built from the eigendecomposition, largest eigenvalue first, so a pure
    input ``|psi><psi|`` comes back as ``|psi> (x) |0>`` up to phase.
    """
    rho = as_density(rho)
    if reference in rho.labels:
        raise LabelError(f"reference label {reference!r} already in use")
    vals, vecs = np.linalg.eigh(_herm(rho.matrix))
    order = np.argsort(vals)[::-1]
    vals = np.clip(vals[order], 0.0, None)
    vecs = vecs[:, order]
    d = rho.dim
    amps = (vecs * np.sqrt(vals)).reshape(d, d)
    return PureState(amps.reshape(-1), rho.dims + ((reference, d),))


def matrix_function(H, f: Callable, zero_policy="keep"):
    """Apply ``f`` to the eigenvalues of Hermitian ``H``, keeping eigenvectors.

    zero_policy
        ``"keep"`` passes every eigenvalue to ``f``; ``"skip"`` maps
        eigenvalues with ``|lambda| <= CLIP`` to 0 without calling ``f`` on them
        (the 0 log 0 = 0 convention); ``"signal"`` raises :class:`DomainError`
        if any eigenvalue is at or below ``CLIP``.
    """
    mat = H.matrix if isinstance(H, Operator) else np.asarray(H)
    vals, vecs = np.linalg.eigh(_herm(mat))
    if zero_policy == "keep":
        mapped = np.asarray(f(vals), dtype=np.complex128)
    elif zero_policy in ("skip", "signal"):
        small = vals <= CLIP
        if zero_policy == "signal" and small.any():
            raise DomainError(f"eigenvalue {vals.min():.3e} outside the domain of f")
        mapped = np.zeros(vals.shape, dtype=np.complex128)
        big = ~small
        # eigenvalues below -CLIP are not silently zeroed
        bad = vals < -CLIP
        if bad.any():
            mapped[bad] = f(vals[bad])
        mapped[big] = f(vals[big])
    else:
        raise ValueError(f"unknown zero_policy {zero_policy!r}")
    if not np.all(np.isfinite(mapped)):
        raise DomainError("matrix function produced non-finite values")
    out = (vecs * mapped) @ vecs.conj().T
    if isinstance(H, Operator):
        return Operator(out, H.dims)
    return out


def sqrt_psd(A):
    """Square root of a positive operator, clipping eigenvalue noise at zero."""
    mat = A.matrix if isinstance(A, Operator) else np.asarray(A)
    vals, vecs = np.linalg.eigh(_herm(mat))
    out = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    return Operator(out, A.dims) if isinstance(A, Operator) else out


def sup_norm(A) -> float:
    """Largest singular value."""
    mat = A.matrix if isinstance(A, Operator) else np.asarray(A)
    if mat.size == 0:
        return 0.0
    return float(np.linalg.norm(mat, 2))


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    invariant: str
    residual: float
    tolerance: float

    def __str__(self):
        return f"{self.invariant}: residual {self.residual:.3e} exceeds {self.tolerance:.1e}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return "valid"
        return "; ".join(str(v) for v in self.violations)


def validate(op, tol=TOL) -> ValidationReport:
    """List every violated invariant of ``op`` with its measured residual."""
    found = []
    if isinstance(op, PureState):
        res = abs(np.linalg.norm(op.amplitudes) - 1.0)
        if res > tol:
            found.append(Violation("unit norm", res, tol))
        return ValidationReport(tuple(found))
    mat = op.matrix
    res = sup_norm(mat - mat.conj().T)
    if res > tol:
        found.append(Violation("hermiticity", res, tol))
    if isinstance(op, DensityOperator):
        low = float(np.linalg.eigvalsh(_herm(mat)).min())
        if low < -tol:
            found.append(Violation("positivity", -low, tol))
        res = abs(np.trace(mat) - 1.0)
        if res > tol:
            found.append(Violation("unit trace", float(res), tol))
    return ValidationReport(tuple(found))


def ensure_valid(op, tol=TOL):
    report = validate(op, tol)
    if not report.ok:
        raise ValidationError(f"{type(op).__name__} invalid: {report}", report)
    return op
