"""Pure numpy implementations of the hot kernels.

Mirrors :mod:`holevolab._kernels` call for call. Used when the compiled
extension is unavailable or ``HOLEVOLAB_BACKEND=python`` is set.
"""

import string

import numpy as np

CLIP = 1e-12

VON_NEUMANN, RENYI, TSALLIS, QUADRATIC = 0, 1, 2, 3

_LETTERS = string.ascii_letters


def partial_trace(mat, dims, keep):
    """Trace out every factor of ``dims`` whose ``keep`` flag is False."""
    n = len(dims)
    t = np.asarray(mat).reshape(tuple(dims) * 2)
    rows = list(_LETTERS[:n])
    cols = list(_LETTERS[n:2 * n])
    for k in range(n):
        if not keep[k]:
            cols[k] = rows[k]
    out_rows = [rows[k] for k in range(n) if keep[k]]
    out_cols = [cols[k] for k in range(n) if keep[k]]
    spec = "".join(rows) + "".join(cols) + "->" + "".join(out_rows + out_cols)
    dk = 1
    for k in range(n):
        if keep[k]:
            dk *= dims[k]
    return np.einsum(spec, t).reshape(dk, dk)


def conditional_blocks(pstack, rho, da, dr):
    """Return ``Tr_a[(P_j x I) rho]`` for every ``j``; ``a`` is the leading factor."""
    rho4 = np.asarray(rho).reshape(da, dr, da, dr)
    return np.einsum("jyx,xbyc->jbc", pstack, rho4)


def spectral_entropies(eigs, kind, q, log_scale):
    """Entropy of each row of a 2-d array of eigenvalues.

    ``log_scale`` is ``1/ln(base)``; it multiplies natural logs for the
    von Neumann and Renyi families and is ignored by the others.
    """
    lam = np.where(eigs > CLIP, eigs, 0.0)
    if kind == VON_NEUMANN:
        safe = np.where(lam > 0.0, lam, 1.0)
        return -np.sum(lam * np.log(safe), axis=1) * log_scale
    if kind == QUADRATIC:
        return 1.0 - np.sum(lam * lam, axis=1)
    powered = np.where(lam > 0.0, np.abs(lam) ** q, 0.0)
    tr = np.sum(powered, axis=1)
    if kind == RENYI:
        return np.log(tr) * log_scale / (1.0 - q)
    if kind == TSALLIS:
        return (tr - 1.0) / (1.0 - q)
    raise ValueError(f"unknown entropy kind code {kind}")
