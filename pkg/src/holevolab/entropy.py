"""Shannon, von Neumann, Renyi, Tsallis and quadratic entropies.

All quantum entropies are computed from eigenvalue spectra, which is more
accurate than ``Tr(rho log rho)`` on rank-deficient states. Logarithms use
the base from :mod:`holevolab.config` (bits by default). Tsallis and
quadratic entropies do not involve a logarithm; Tsallis at ``q = 1``
reduces to the von Neumann entropy in nats, whatever the configured base.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .config import CLIP, SUPPORT_TOL, TOL, log_scale
from .errors import DomainError, LabelError, ValidationError
from .operators import Operator, PureState, _herm, as_density, partial_trace

_CODES = {"von_neumann": 0, "renyi": 1, "tsallis": 2, "quadratic": 3}


@dataclass(frozen=True)
class EntropyKind:
    """Entropy family, with its order ``q`` for Renyi and Tsallis."""

    family: str
    q: Optional[float] = None

    def __post_init__(self):
        if self.family not in _CODES:
            raise ValueError(f"unknown entropy family {self.family!r}")
        if self.family in ("renyi", "tsallis"):
            if self.q is None:
                raise ValueError(f"{self.family} entropy needs an order q")
            object.__setattr__(self, "q", float(self.q))
            if self.family == "renyi" and not 0.0 < self.q <= 1.0:
                raise ValueError(f"Renyi order must satisfy 0 < q <= 1, got {self.q}")
            if self.family == "tsallis" and not 0.0 < self.q < math.inf:
                raise ValueError(f"Tsallis order must satisfy 0 < q < inf, got {self.q}")
        elif self.q is not None:
            raise ValueError(f"{self.family} entropy takes no order")

    def __str__(self):
        return self.family if self.q is None else f"{self.family}({self.q:g})"

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: ``"renyi(0.5)"``, ``"quadratic"`` and so on."""
        text = text.strip().lower()
        if "(" in text:
            family, rest = text.split("(", 1)
            return cls(family.strip(), float(rest.rstrip(")")))
        return cls(text)


VON_NEUMANN = EntropyKind("von_neumann")
QUADRATIC = EntropyKind("quadratic")


def renyi(q):
    return EntropyKind("renyi", q)


def tsallis(q):
    return EntropyKind("tsallis", q)


# The four families exercised by the basis-invariance and equal-presence checks.
STANDARD_KINDS = (VON_NEUMANN, renyi(0.5), tsallis(2.0), QUADRATIC)


class PlusInfinity:
    """Marker for an infinite relative entropy. Never a float."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PLUS_INFINITY"

    __str__ = __repr__


PLUS_INFINITY = PlusInfinity()


def is_infinite(value):
    return value is PLUS_INFINITY


# --------------------------------------------------------------------------


def spectral_entropy(eigs, kind=VON_NEUMANN):
    """Entropy of one spectrum (1-d) or of each row of a 2-d array of spectra."""
    arr = np.asarray(eigs, dtype=np.float64)
    rows = arr.reshape(1, -1) if arr.ndim == 1 else arr
    if kind.family == "renyi" and kind.q == 1.0:
        kind = VON_NEUMANN
    if kind.family == "tsallis" and kind.q == 1.0:
        out = _backend.spectral_entropies(rows, 0, 1.0, 1.0)
    else:
        out = _backend.spectral_entropies(rows, _CODES[kind.family], kind.q or 0.0, log_scale())
    return float(out[0]) if arr.ndim == 1 else out


def shannon(p):
    """Shannon entropy with 0 log 0 = 0."""
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if p.size == 0 or p.min() < -CLIP or abs(p.sum() - 1.0) > TOL:
        raise ValidationError(f"malformed probability vector (min {p.min() if p.size else None}, "
                              f"sum {p.sum()})")
    return _shannon(p)


def _shannon(p):
    q = p[p > CLIP]
    return float(-np.sum(q * np.log(q)) * log_scale())


def entropy(rho, kind=VON_NEUMANN):
    """``S_K(rho)`` from the eigenvalue spectrum."""
    if not isinstance(kind, EntropyKind):
        raise TypeError(f"kind must be an EntropyKind, got {kind!r}")
    if isinstance(rho, PureState):
        return spectral_entropy(np.array([1.0]), kind)
    mat = rho.matrix if isinstance(rho, Operator) else np.asarray(rho)
    return spectral_entropy(np.linalg.eigvalsh(_herm(mat)), kind)


def relative_entropy(A, B):
    """``Tr(A log A) - Tr(A log B)`` for positive operators.

    Returns :data:`PLUS_INFINITY` when the support of ``A`` is not contained
    in the support of ``B``, i.e. when more than ``SUPPORT_TOL`` of ``A``'s
    weight lies in the numerical kernel of ``B``.
    """
    a_mat = A.matrix if isinstance(A, Operator) else np.asarray(A)
    b_mat = B.matrix if isinstance(B, Operator) else np.asarray(B)
    if a_mat.shape != b_mat.shape:
        raise DomainError(f"shape mismatch {a_mat.shape} vs {b_mat.shape}")
    a_vals, a_vecs = np.linalg.eigh(_herm(a_mat))
    b_vals, b_vecs = np.linalg.eigh(_herm(b_mat))
    for name, vals in (("first", a_vals), ("second", b_vals)):
        if vals.min() < -CLIP * max(1.0, abs(vals).max()):
            raise DomainError(f"{name} argument of relative entropy is not positive "
                              f"(eigenvalue {vals.min():.3e})")
    a_vals = np.where(a_vals > CLIP, a_vals, 0.0)
    overlap = np.abs(a_vecs.conj().T @ b_vecs) ** 2  # [i, k] = |<a_i|b_k>|^2
    weight = a_vals @ overlap  # A's weight on each eigenvector of B
    kernel = b_vals <= CLIP
    if weight[kernel].sum() > SUPPORT_TOL:
        return PLUS_INFINITY
    pos = a_vals > 0
    first = np.sum(a_vals[pos] * np.log(a_vals[pos]))
    second = np.sum(weight[~kernel] * np.log(b_vals[~kernel]))
    return float((first - second) * log_scale())


def _group(rho, spec):
    labels = rho.labels
    if isinstance(spec, str):
        if spec in labels:
            return (spec,)
        spec = tuple(spec)
    spec = tuple(spec)
    for lab in spec:
        if lab not in labels:
            raise LabelError(f"unknown subsystem label {lab!r}; have {labels}")
    return spec


def conditional_entropy(rho, first, second):
    """``S(first|second) = S(first second) - S(second)`` (von Neumann)."""
    rho = as_density(rho)
    f, s = _group(rho, first), _group(rho, second)
    return entropy(partial_trace(rho, f + s)) - entropy(partial_trace(rho, s))


def mutual_info(rho, first, second):
    """``S(first:second) = S(first) + S(second) - S(first second)`` (von Neumann)."""
    rho = as_density(rho)
    f, s = _group(rho, first), _group(rho, second)
    return (entropy(partial_trace(rho, f)) + entropy(partial_trace(rho, s))
            - entropy(partial_trace(rho, f + s)))
