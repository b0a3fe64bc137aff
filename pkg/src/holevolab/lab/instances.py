"""Random and constructed states for the relation suites."""

from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

import numpy as np

from ..channels import ChannelPair
from ..entropy import VON_NEUMANN, EntropyKind
from ..errors import DimensionError
from ..measurements import Povm, _rng, random_unitary
from ..operators import DensityOperator, PureState, partial_trace

LABELS = ("a", "b", "c")


@dataclass(frozen=True, eq=False)
class Instance:
    """Everything one relation evaluation needs.

    ``povms`` maps role names (``"P"``, ``"v"``, ``"w0"`` ...) to measurements
    on ``a``. ``state`` is on ``a``, ``ab`` or ``abc`` depending on the
    relation; ``aux_state`` holds a constructed state for the boundary
    cases of a relation; ``channel`` is used by the channel-side relations.
    """

    dims: Tuple[int, int, int]
    state: Optional[DensityOperator] = None
    channel: Optional[ChannelPair] = None
    aux_state: Optional[DensityOperator] = None
    povms: Mapping[str, Povm] = field(default_factory=dict)
    kinds: Tuple[EntropyKind, ...] = (VON_NEUMANN,)
    seed: Optional[int] = None


def haar_vector(d, seed=None):
    rng = _rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_pure_state(dims, seed=None, labels=LABELS) -> PureState:
    dims = tuple(dims)
    return PureState(haar_vector(int(np.prod(dims)), seed), tuple(zip(labels, dims)))


def random_mixed_state(dims, seed=None, labels=LABELS, ref_dim=None) -> DensityOperator:
    """Reduced state of a Haar vector on ``dims (x) ref``.

    With the default reference of equal total dimension the result is
    full rank with probability one (an induced-measure Ginibre state).
    """
    dims = tuple(dims)
    ref_dim = ref_dim or int(np.prod(dims))
    psi = random_pure_state(dims + (ref_dim,), seed, tuple(labels[: len(dims)]) + ("r",))
    return partial_trace(psi, tuple(labels[: len(dims)]))


def _block_embeddings(d_a, d_b, rng):
    """Isometries ``C^m -> B_j`` onto mutually orthogonal subspaces of ``b``."""
    m = d_b // d_a
    if m < 1:
        raise DimensionError(f"perfect presence in b needs d_b >= d_a, got {d_b} < {d_a}")
    Ub = random_unitary(d_b, rng)
    return m, [Ub[:, j * m:(j + 1) * m] for j in range(d_a)]


def perfect_presence_state(d_a, d_b, d_c, seed=None, ref_dim=2):
    """Mixed ``rho_abc`` whose ``w`` information is perfectly present in ``b``.

    ``|Psi> = sum_j sqrt(p_j) |w_j> (x) |Psi_j>`` where ``|Psi_j>`` lives on
    ``B_j (x) c (x) r`` and the ``B_j`` are orthogonal subspaces of ``b``;
    tracing out ``r`` leaves a generic mixed state. Returns ``(rho, w)``.
    """
    from ..measurements import basis

    rng = _rng(seed)
    w = basis(random_unitary(d_a, rng))
    p = rng.dirichlet(np.ones(d_a))
    m, blocks = _block_embeddings(d_a, d_b, rng)
    amps = np.zeros((d_a, d_b, d_c, ref_dim), dtype=np.complex128)
    for j in range(d_a):
        psi_j = haar_vector(m * d_c * ref_dim, rng).reshape(m, d_c, ref_dim)
        local = np.einsum("bk,kcr->bcr", blocks[j], psi_j)
        amps += np.sqrt(p[j]) * np.einsum("a,bcr->abcr", w.vectors[:, j], local)
    psi = PureState(amps.reshape(-1), (("a", d_a), ("b", d_b), ("c", d_c), ("r", ref_dim)))
    return partial_trace(psi, ("a", "b", "c")), w


def present_and_absent_state(d_a, d_b, d_c, seed=None):
    """Pure ``|Omega>_abc`` with ``w`` perfectly present in ``b`` and absent from ``c``.

    ``|Omega> = sum_j sqrt(p_j) |w_j> (x) (J_j U_j (x) I)|gamma>`` with one
    shared ``|gamma>`` on ``C^m (x) c``, so every conditional state on ``c``
    equals ``Tr_m |gamma><gamma|``. Returns ``(state, w)``.
    """
    from ..measurements import basis

    rng = _rng(seed)
    w = basis(random_unitary(d_a, rng))
    p = rng.dirichlet(np.ones(d_a))
    m, blocks = _block_embeddings(d_a, d_b, rng)
    gamma = haar_vector(m * d_c, rng).reshape(m, d_c)
    amps = np.zeros((d_a, d_b, d_c), dtype=np.complex128)
    for j in range(d_a):
        local = blocks[j] @ random_unitary(m, rng) @ gamma
        amps += np.sqrt(p[j]) * np.einsum("a,bc->abc", w.vectors[:, j], local)
    return PureState(amps.reshape(-1), (("a", d_a), ("b", d_b), ("c", d_c))), w
