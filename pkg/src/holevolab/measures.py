"""Holevo-type measures of how much of one type of information sits where.

``chi_location(P, rho, over="b")`` is the Holevo quantity of the ensemble
of states on ``b`` conditioned on the outcomes of POVM ``P`` on ``a``;
``missing_info`` is ``H(P) - chi``. Internally everything is computed from
the stack of unnormalized conditional operators so that one
eigendecomposition per outcome serves every entropy family.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import CLIP, TOL
from .entropy import (
    VON_NEUMANN,
    EntropyKind,
    _shannon,
    entropy,
    spectral_entropy,
)
from .errors import PreconditionError
from .measurements import Ensemble, Povm, conditional_blocks
from .operators import DensityOperator, PureState, as_density, partial_trace


def _block_spectra(blocks):
    """Probabilities, normalized spectra of live outcomes, spectrum of the sum."""
    herm = 0.5 * (blocks + np.conj(np.transpose(blocks, (0, 2, 1))))
    probs = np.real(np.einsum("jii->j", herm))
    live = probs > CLIP
    spectra = np.linalg.eigvalsh(herm[live]) / probs[live][:, None]
    avg = np.linalg.eigvalsh(herm.sum(axis=0))
    return probs, live, spectra, avg


def _chi_from_spectra(probs, live, spectra, avg, kind):
    if not live.any():
        return 0.0
    inner = spectral_entropy(spectra, kind)
    return spectral_entropy(avg, kind) - float(np.dot(probs[live], inner))


def chi_of_blocks(blocks, kinds=(VON_NEUMANN,)):
    """Holevo quantity of the ensemble ``{p_j rho_j}`` given as blocks, per kind."""
    parts = _block_spectra(np.asarray(blocks))
    return tuple(_chi_from_spectra(*parts, kind) for kind in kinds)


def holevo_chi(ens: Ensemble, kind: EntropyKind = VON_NEUMANN) -> float:
    """``S_K(sum p_j rho_j) - sum p_j S_K(rho_j)``; zero-probability outcomes are skipped."""
    live = [(p, s) for p, s in zip(ens.probs, ens.states) if s is not None and p > CLIP]
    if not live:
        return 0.0
    blocks = np.stack([p * s.matrix for p, s in live])
    return chi_of_blocks(blocks, (kind,))[0]


def chi_location(P: Povm, rho, kind: EntropyKind = VON_NEUMANN, over=None) -> float:
    """Amount of type-``P`` information about ``P.label`` present in ``over``."""
    blocks, _ = conditional_blocks(P, rho, over)
    return chi_of_blocks(blocks, (kind,))[0]


def chi_values(P: Povm, rho, kinds: Sequence[EntropyKind], over=None):
    """``chi_location`` for several kinds from a single set of eigendecompositions."""
    blocks, _ = conditional_blocks(P, rho, over)
    return chi_of_blocks(blocks, tuple(kinds))


def outcome_probabilities(P: Povm, rho) -> np.ndarray:
    """``p_j = Tr(P_j rho_a)`` for the subsystem ``P`` acts on."""
    rho_a = partial_trace(as_density(rho), (P.label,))
    return np.clip(np.real(np.einsum("jab,ba->j", P.elements, rho_a.matrix)), 0.0, None)


def missing_info(P: Povm, rho, over=None) -> float:
    """``H(P|b) = H(P) - chi(P, b)``, in ``[0, H(P)]``."""
    blocks, _ = conditional_blocks(P, rho, over)
    probs, live, spectra, avg = _block_spectra(blocks)
    return _shannon(np.clip(probs, 0.0, None)) - _chi_from_spectra(probs, live, spectra, avg,
                                                                     VON_NEUMANN)


def joint_distribution(P: Povm, Q: Povm, rho) -> np.ndarray:
    """``Pr(P_j, Q_k) = Tr[(P_j x Q_k) rho_ab]`` as an ``(n_P, n_Q)`` array."""
    blocks, dims = conditional_blocks(P, rho, (Q.label,))
    return np.clip(np.real(np.einsum("jab,kba->jk", blocks, Q.elements)), 0.0, None)


def shannon_mutual_info(P: Povm, Q: Povm, rho) -> float:
    """Classical mutual information ``H(P:Q)`` of the joint outcome distribution."""
    joint = joint_distribution(P, Q, rho)
    joint = joint / joint.sum()
    return _shannon(joint.sum(axis=1)) + _shannon(joint.sum(axis=0)) - _shannon(joint.ravel())


def pinch_channel(P: Povm, rho, over=None, env_label="e") -> DensityOperator:
    """``sum_j |e_j><e_j| (x) Tr_a(P_j rho_ab)`` on ``e`` followed by the remaining systems."""
    blocks, dims = conditional_blocks(P, rho, over)
    n, dr = blocks.shape[0], blocks.shape[1]
    out = np.zeros((n, dr, n, dr), dtype=np.complex128)
    for j in range(n):
        out[j, :, j, :] = blocks[j]
    return DensityOperator(out.reshape(n * dr, n * dr), ((env_label, n),) + dims)


def truncate(P: Povm, rho) -> np.ndarray:
    """``sum_j (P_j x I) rho (P_j x I)`` with ``P`` acting on the leading subsystem.

    For a projective decomposition this is the pinched (block-diagonal) part
    of ``rho``; for a general POVM the result need not have unit trace.
    """
    rho = as_density(rho)
    if rho.labels[0] != P.label:
        raise PreconditionError(f"{P.label!r} must be the leading subsystem of {rho.labels}")
    da = P.dim
    dr = rho.dim // da
    r4 = rho.matrix.reshape(da, dr, da, dr)
    out = np.einsum("jxy,ybzc,jzw->xbwc", P.elements, r4, P.elements)
    return out.reshape(rho.dim, rho.dim)


@dataclass(frozen=True)
class BiasReport:
    """Entropy bias ``S_K(b) - S_K(c)`` and information bias ``chi_K(P,b) - chi_K(P,c)``."""

    entropy_bias: float
    info_bias: float
    kind: EntropyKind


def biases(rho, P: Povm, kind: EntropyKind = VON_NEUMANN, b="b", c="c") -> BiasReport:
    rho = as_density(rho)
    s_b = entropy(partial_trace(rho, (b,)), kind)
    s_c = entropy(partial_trace(rho, (c,)), kind)
    chi_b = chi_location(P, rho, kind, over=(b,))
    chi_c = chi_location(P, rho, kind, over=(c,))
    return BiasReport(s_b - s_c, chi_b - chi_c, kind)


def coherent_info(state, b="b", c="c") -> float:
    """Entropy bias ``S(rho_b) - S(rho_c)`` of a tripartite pure state."""
    if isinstance(state, PureState):
        rho = state.density()
    else:
        rho = as_density(state)
        purity = float(np.real(np.trace(rho.matrix @ rho.matrix)))
        if abs(purity - 1.0) > TOL:
            raise PreconditionError(f"coherent information needs a pure state (purity {purity:.6f})")
    return entropy(partial_trace(rho, (b,))) - entropy(partial_trace(rho, (c,)))
