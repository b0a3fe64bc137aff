# Compiled versions of the kernels in _fallback.py; same signatures.
import numpy as np

cimport numpy as cnp
from libc.math cimport log, pow

cnp.import_array()

DEF CLIP = 1e-12

VON_NEUMANN, RENYI, TSALLIS, QUADRATIC = 0, 1, 2, 3

_offset_cache = {}


cdef tuple _offsets(tuple dims, tuple keep):
    key = (dims, keep)
    hit = _offset_cache.get(key)
    if hit is not None:
        return hit
    cdef Py_ssize_t n = len(dims)
    strides = [1] * n
    for k in range(n - 2, -1, -1):
        strides[k] = strides[k + 1] * dims[k + 1]
    kept = [0]
    traced = [0]
    for k in range(n):
        step = [s + m * strides[k] for s in (kept if keep[k] else traced) for m in range(dims[k])]
        if keep[k]:
            kept = step
        else:
            traced = step
    out = (np.asarray(kept, dtype=np.intp), np.asarray(traced, dtype=np.intp))
    _offset_cache[key] = out
    return out


def partial_trace(mat, dims, keep):
    cdef Py_ssize_t[::1] ko, to
    ko, to = _offsets(tuple(int(d) for d in dims), tuple(bool(k) for k in keep))
    cdef const double complex[:, ::1] m = np.ascontiguousarray(mat, dtype=np.complex128)
    cdef Py_ssize_t dk = ko.shape[0], dt = to.shape[0]
    cdef Py_ssize_t i, j, t, ri, cj
    cdef double complex s
    out = np.empty((dk, dk), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    for i in range(dk):
        ri = ko[i]
        for j in range(dk):
            cj = ko[j]
            s = 0
            for t in range(dt):
                s = s + m[ri + to[t], cj + to[t]]
            o[i, j] = s
    return out


def conditional_blocks(pstack, rho, Py_ssize_t da, Py_ssize_t dr):
    cdef const double complex[:, :, ::1] p = np.ascontiguousarray(pstack, dtype=np.complex128)
    cdef const double complex[:, ::1] r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t j, b, c, x, y
    cdef double complex s, pyx
    out = np.zeros((n, dr, dr), dtype=np.complex128)
    cdef double complex[:, :, ::1] o = out
    for j in range(n):
        for x in range(da):
            for y in range(da):
                pyx = p[j, y, x]
                if pyx == 0:
                    continue
                for b in range(dr):
                    for c in range(dr):
                        o[j, b, c] = o[j, b, c] + pyx * r[x * dr + b, y * dr + c]
    return out


def spectral_entropies(eigs, int kind, double q, double log_scale):
    cdef const double[:, ::1] e = np.ascontiguousarray(eigs, dtype=np.float64)
    cdef Py_ssize_t m = e.shape[0], d = e.shape[1]
    cdef Py_ssize_t i, k
    cdef double acc, lam
    if kind not in (0, 1, 2, 3):
        raise ValueError(f"unknown entropy kind code {kind}")
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(m):
        acc = 0.0
        for k in range(d):
            lam = e[i, k]
            if lam <= CLIP:
                continue
            if kind == 0:
                acc -= lam * log(lam)
            elif kind == 3:
                acc += lam * lam
            else:
                acc += pow(lam, q)
        if kind == 0:
            o[i] = acc * log_scale
        elif kind == 3:
            o[i] = 1.0 - acc
        elif kind == 1:
            o[i] = log(acc) * log_scale / (1.0 - q)
        else:
            o[i] = (acc - 1.0) / (1.0 - q)
    return out
