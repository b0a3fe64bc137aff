"""Isometries, channel kets, Kraus channels and their complements.

An isometry ``V: H_a -> H_b (x) H_c`` is stored as a ``(d_b*d_c, d_a)``
matrix with ``b`` the leading output factor. The direct channel keeps ``b``
(Kraus operators ``<c_l|V``), the complementary channel keeps ``c``
(Kraus operators ``<b_m|V``).
"""

from dataclasses import dataclass, field

import numpy as np

from .config import MARGINAL_TOL, TOL
from .entropy import VON_NEUMANN, EntropyKind, spectral_entropy
from .errors import DimensionError, PreconditionError, ValidationError
from .measurements import (
    Ensemble,
    OrthonormalBasis,
    Povm,
    _rng,
    random_unitary,
)
from .measures import chi_of_blocks
from .operators import DensityOperator, Operator, PureState, _frozen, as_density, partial_trace


@dataclass(frozen=True, eq=False)
class Isometry:
    matrix: np.ndarray
    d_a: int
    d_b: int
    d_c: int

    def __post_init__(self):
        V = _frozen(self.matrix)
        if V.shape != (self.d_b * self.d_c, self.d_a):
            raise DimensionError(f"isometry shape {V.shape} != ({self.d_b * self.d_c}, {self.d_a})")
        object.__setattr__(self, "matrix", V)

    def residual(self):
        return float(np.linalg.norm(self.matrix.conj().T @ self.matrix - np.eye(self.d_a), 2))

    def tensor3(self):
        """``V[b, c, a]``."""
        return self.matrix.reshape(self.d_b, self.d_c, self.d_a)


def ensure_isometry(V: Isometry, tol=TOL):
    res = V.residual()
    if res > tol:
        raise ValidationError(f"V^dag V differs from the identity by {res:.3e}")
    return V


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """``A -> sum_l K_l A K_l^dag`` with ``kraus`` of shape ``(n, d_out, d_in)``."""

    kraus: np.ndarray

    def __post_init__(self):
        K = _frozen(self.kraus)
        if K.ndim != 3:
            raise DimensionError(f"Kraus stack must be 3-d, got shape {K.shape}")
        object.__setattr__(self, "kraus", K)

    @property
    def d_in(self):
        return self.kraus.shape[2]

    @property
    def d_out(self):
        return self.kraus.shape[1]

    def closure_residual(self):
        K = self.kraus
        total = np.einsum("lji,ljk->ik", K.conj(), K)
        return float(np.linalg.norm(total - np.eye(self.d_in), 2))

    def __call__(self, A):
        return apply(self, A)


@dataclass(frozen=True, eq=False)
class ChannelPair:
    """An isometry with its direct (to ``b``) and complementary (to ``c``) channels."""

    isometry: Isometry
    direct: KrausChannel = field(init=False)
    complementary: KrausChannel = field(init=False)

    def __post_init__(self):
        V3 = self.isometry.tensor3()
        object.__setattr__(self, "direct", KrausChannel(np.transpose(V3, (1, 0, 2))))
        object.__setattr__(self, "complementary", KrausChannel(V3))

    def side(self, which):
        if which in ("direct", "b", "E"):
            return self.direct
        if which in ("complementary", "c", "F"):
            return self.complementary
        raise ValueError(f"unknown channel side {which!r}")


def kraus_pair(V: Isometry) -> ChannelPair:
    return ChannelPair(V)


def isometry_from_kraus(channel: KrausChannel) -> Isometry:
    """``V = sum_l K_l (x) |c_l>`` with ``d_c`` equal to the number of Kraus operators."""
    K = channel.kraus
    n = K.shape[0]
    V3 = np.transpose(K, (1, 0, 2))  # [b, l, a]
    return Isometry(V3.reshape(channel.d_out * n, channel.d_in), channel.d_in, channel.d_out, n)


def apply(channel: KrausChannel, A):
    """``sum_l K_l A K_l^dag``; returns the same kind of object it was given."""
    mat = A.matrix if isinstance(A, Operator) else np.asarray(A)
    if mat.shape != (channel.d_in, channel.d_in):
        raise DimensionError(f"input shape {mat.shape} does not match channel input {channel.d_in}")
    K = channel.kraus
    out = np.einsum("lij,jk,lmk->im", K, mat, K.conj())
    if isinstance(A, Operator):
        label = "out"
        cls = DensityOperator if isinstance(A, DensityOperator) else Operator
        return cls(out, ((label, channel.d_out),))
    return out


def channel_ket(V: Isometry) -> PureState:
    """``|Omega> = d_a^{-1/2} sum_j |j>_a (x) V|j>`` on ``a, b, c``."""
    amps = V.matrix.T.reshape(-1) / np.sqrt(V.d_a)
    return PureState(amps, (("a", V.d_a), ("b", V.d_b), ("c", V.d_c)))


def isometry_from_channel_ket(omega: PureState, tol=MARGINAL_TOL) -> Isometry:
    """Inverse of :func:`channel_ket` for a state whose ``a`` marginal is ``I/d_a``."""
    if len(omega.dims) != 3:
        raise PreconditionError(f"channel ket must be tripartite, got dims {omega.dims}")
    (_, da), (_, db), (_, dc) = omega.dims
    M = omega.amplitudes.reshape(da, db * dc)
    rho_a = M @ M.conj().T
    res = float(np.linalg.norm(rho_a - np.eye(da) / da, 2))
    if res > tol:
        raise PreconditionError(f"a-marginal differs from I/d_a by {res:.3e}; not a channel ket")
    return Isometry(np.sqrt(da) * M.T, da, db, dc)


def upsilon(V: Isometry):
    """``Upsilon = V V^dag`` and its partial traces onto ``b`` and ``c``."""
    ups = V.matrix @ V.matrix.conj().T
    t = ups.reshape(V.d_b, V.d_c, V.d_b, V.d_c)
    return ups, np.einsum("bcdc->bd", t), np.einsum("bcbd->cd", t)


def random_isometry(d_a, d_b, d_c, seed=None) -> Isometry:
    """Haar isometry: the first ``d_a`` columns of a Haar unitary on C^(d_b d_c)."""
    if d_a > d_b * d_c:
        raise DimensionError(f"no isometry from dimension {d_a} into {d_b}x{d_c}")
    U = random_unitary(d_b * d_c, _rng(seed))
    return Isometry(U[:, :d_a], d_a, d_b, d_c)


def classical_copy(d=2) -> Isometry:
    """``V|j> = |j>_b |j>_c``; its channel ket is the GHZ state."""
    V = np.zeros((d * d, d))
    for j in range(d):
        V[j * d + j, j] = 1.0
    return Isometry(V, d, d, d)


def identity_isometry(d=2) -> Isometry:
    return Isometry(np.eye(d), d, d, 1)


# --------------------------------------------------------------------------
# map-state duality


@dataclass(frozen=True, eq=False)
class StateDefinedChannel:
    """Channel and adjoint read off from ``rho_ab`` with ``rho_a = I/d_a``.

    ``E(A) = d_a Tr_a[(A^T x I) rho_ab]`` and
    ``E^dag(B)^T = d_a Tr_b[(I x B) rho_ab]``, transposes taken in ``basis``.
    """

    rho_ab: DensityOperator
    basis_vectors: np.ndarray

    @property
    def d_a(self):
        return self.rho_ab.dims[0][1]

    @property
    def d_b(self):
        return self.rho_ab.dims[1][1]

    def _transpose(self, A):
        W = self.basis_vectors
        return W @ (W.conj().T @ A @ W).T @ W.conj().T

    def __call__(self, A):
        A = A.matrix if isinstance(A, Operator) else np.asarray(A)
        da, db = self.d_a, self.d_b
        r4 = self.rho_ab.matrix.reshape(da, db, da, db)
        At = self._transpose(A)
        return da * np.einsum("xy,ybxc->bc", At, r4)

    def adjoint(self, B):
        B = B.matrix if isinstance(B, Operator) else np.asarray(B)
        da, db = self.d_a, self.d_b
        r4 = self.rho_ab.matrix.reshape(da, db, da, db)
        transposed = da * np.einsum("cb,xbyc->xy", B, r4)
        return self._transpose(transposed)


def channel_from_bipartite_state(rho_ab, basis: OrthonormalBasis = None,
                                 tol=MARGINAL_TOL) -> StateDefinedChannel:
    rho_ab = as_density(rho_ab)
    if len(rho_ab.dims) != 2:
        raise PreconditionError(f"expected a bipartite state, got dims {rho_ab.dims}")
    da = rho_ab.dims[0][1]
    rho_a = partial_trace(rho_ab, (rho_ab.labels[0],)).matrix
    res = float(np.linalg.norm(rho_a - np.eye(da) / da, 2))
    if res > tol:
        raise PreconditionError(f"rho_a differs from I/d_a by {res:.3e}")
    W = np.eye(da) if basis is None else basis.vectors
    return StateDefinedChannel(rho_ab, np.asarray(W, dtype=np.complex128))


# --------------------------------------------------------------------------
# channel-side information


def input_ensemble(P: Povm):
    """``p_j = Tr(P_j)/d_a`` and ``rho_aj = P_j / Tr(P_j)``."""
    traces = np.real(np.einsum("jii->j", P.elements))
    return traces / P.dim, P.elements


def output_blocks(P: Povm, channel: KrausChannel):
    """``p_j E(rho_aj) = E(P_j)/d_a`` for every outcome."""
    K = channel.kraus
    return np.einsum("lij,njk,lmk->nim", K, P.elements, K.conj()) / P.dim


def chi_channel(P: Povm, pair: ChannelPair, which="direct", kind: EntropyKind = VON_NEUMANN):
    """Holevo quantity of the output ensemble ``{p_j, E(rho_aj)}``."""
    if P.dim != pair.isometry.d_a:
        raise DimensionError(f"POVM dimension {P.dim} != channel input {pair.isometry.d_a}")
    return chi_of_blocks(output_blocks(P, pair.side(which)), (kind,))[0]


def chi_channel_values(P: Povm, pair: ChannelPair, which, kinds):
    return chi_of_blocks(output_blocks(P, pair.side(which)), tuple(kinds))


def channel_entropy_bias(V: Isometry, kind: EntropyKind = VON_NEUMANN) -> float:
    """``S_K(Upsilon_b / d_a) - S_K(Upsilon_c / d_a)``."""
    _, ub, uc = upsilon(V)
    sb = spectral_entropy(np.linalg.eigvalsh(0.5 * (ub + ub.conj().T)) / V.d_a, kind)
    sc = spectral_entropy(np.linalg.eigvalsh(0.5 * (uc + uc.conj().T)) / V.d_a, kind)
    return sb - sc


def povm_from_input_ensemble(ens: Ensemble, pi, basis: OrthonormalBasis = None,
                             tol=MARGINAL_TOL, label="a") -> Povm:
    """POVM on ``a`` reproducing an input ensemble on ``a'`` at the channel output.

    ``P_j^T = p_j W rho_j W^dag`` with ``W = sum_k pi_k^{-1/2} |a_k><a'_k|``,
    restricted to ``pi_k > 0``. Transposes are in the computational basis of
    ``a``; ``basis`` (default computational) is the Schmidt basis ``{a'_k}``.
    """
    pi = np.asarray(pi, dtype=float)
    d = pi.shape[0]
    B = np.eye(d, dtype=np.complex128) if basis is None else np.asarray(basis.vectors)
    live = [(p, s) for p, s in zip(ens.probs, ens.states) if s is not None]
    states = np.stack([B.conj().T @ s.matrix @ B for _, s in live])
    probs = np.array([p for p, _ in live])
    avg = np.einsum("j,jab->ab", probs, states)
    res = float(np.linalg.norm(avg - np.diag(pi), 2))
    if res > tol:
        raise PreconditionError(f"ensemble average differs from diag(pi) by {res:.3e}")
    inv = np.where(pi > 1e-12, 1.0 / np.sqrt(np.where(pi > 1e-12, pi, 1.0)), 0.0)
    W = np.diag(inv)
    PT = probs[:, None, None] * np.einsum("ab,jbc,dc->jad", W, states, W.conj())
    elements = np.transpose(PT, (0, 2, 1))
    full = []
    it = iter(elements)
    for p, s in zip(ens.probs, ens.states):
        full.append(next(it) if s is not None else np.zeros((d, d), dtype=np.complex128))
    return Povm(np.stack(full), label)


def schmidt_channel_state(V: Isometry, pi, basis: OrthonormalBasis = None) -> PureState:
    """``(I (x) V)|Phi>`` with ``|Phi> = sum_k sqrt(pi_k) |k>_a (x) |a'_k>``."""
    pi = np.asarray(pi, dtype=float)
    d = V.d_a
    B = np.eye(d, dtype=np.complex128) if basis is None else np.asarray(basis.vectors)
    cols = V.matrix @ B  # column k is V|a'_k>
    amps = (np.sqrt(np.clip(pi, 0.0, None))[:, None] * cols.T).reshape(-1)
    return PureState(amps, (("a", d), ("b", V.d_b), ("c", V.d_c)))
