"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy fallback. ``HOLEVOLAB_BACKEND=python`` forces the fallback at import,
and :func:`use` switches at runtime (tests and the benchmark rely on it).
"""

import os

from . import _fallback

try:
    from . import _kernels
except ImportError:  # extension not built
    _kernels = None

_IMPLS = {"python": _fallback}
if _kernels is not None:
    _IMPLS["cython"] = _kernels

_active = _fallback
if _kernels is not None and os.environ.get("HOLEVOLAB_BACKEND", "").lower() != "python":
    _active = _kernels


def available():
    return sorted(_IMPLS)


def name():
    return "cython" if _active is _kernels and _kernels is not None else "python"


def use(backend):
    """Select ``"cython"`` or ``"python"`` kernels; returns the previous name."""
    global _active
    if backend not in _IMPLS:
        raise ValueError(f"backend {backend!r} not available (have {available()})")
    previous = name()
    _active = _IMPLS[backend]
    return previous


def partial_trace(mat, dims, keep):
    return _active.partial_trace(mat, dims, keep)


def conditional_blocks(pstack, rho, da, dr):
    return _active.conditional_blocks(pstack, rho, da, dr)


def spectral_entropies(eigs, kind, q, log_scale):
    return _active.spectral_entropies(eigs, kind, q, log_scale)
