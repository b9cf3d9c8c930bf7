# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in :mod:`matchgates._pykernels`.

Bit rows are packed into 64-bit words on entry; the arguments and results
match the numpy implementation exactly.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef extern from *:
    int popcountll "__builtin_popcountll"(unsigned long long) nogil


def _pack(bits):
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    rows, n = bits.shape
    words = max(1, (n + 63) // 64)
    out = np.zeros((rows, words), dtype=np.uint64)
    for l in range(n):
        out[:, l >> 6] |= bits[:, l].astype(np.uint64) << np.uint64(l & 63)
    return out


cdef inline int _pc_and(const uint64_t* a, const uint64_t* b, int W) noexcept nogil:
    cdef int s = 0
    cdef int w
    for w in range(W):
        s += popcountll(a[w] & b[w])
    return s


cdef inline void _leaf(const uint64_t* x, const uint64_t* z, long q, const double* bloch,
                       int n, int W, double* re, double* im) noexcept nogil:
    cdef double v = 1.0
    cdef int l, code
    q = (q - _pc_and(x, z, W)) & 3
    for l in range(n):
        code = <int>((x[l >> 6] >> (l & 63)) & 1) | (<int>((z[l >> 6] >> (l & 63)) & 1) << 1)
        v *= bloch[4 * l + code]
        if v == 0.0:
            re[0] = 0.0
            im[0] = 0.0
            return
    if q == 0:
        re[0] = v; im[0] = 0.0
    elif q == 1:
        re[0] = 0.0; im[0] = v
    elif q == 2:
        re[0] = -v; im[0] = 0.0
    else:
        re[0] = 0.0; im[0] = -v


def monomial_values(idx, gx, gz, gq, bloch):
    cdef cnp.int64_t[:, ::1] ix = np.ascontiguousarray(idx, dtype=np.int64)
    cdef cnp.uint64_t[:, ::1] px = _pack(gx)
    cdef cnp.uint64_t[:, ::1] pz = _pack(gz)
    cdef cnp.int64_t[::1] q0 = np.ascontiguousarray(gq, dtype=np.int64)
    cdef double[:, ::1] bl = np.ascontiguousarray(bloch, dtype=np.float64)
    cdef Py_ssize_t K = ix.shape[0]
    cdef int d = ix.shape[1]
    cdef int W = px.shape[1]
    cdef int n = bl.shape[0]
    out = np.empty(K, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef uint64_t* x = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* z = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef Py_ssize_t k
    cdef int j, w
    cdef long q
    cdef int64_t g
    cdef double re, im
    try:
        with nogil:
            for k in range(K):
                for w in range(W):
                    x[w] = 0
                    z[w] = 0
                q = 0
                for j in range(d):
                    g = ix[k, j]
                    q += q0[g] + 2 * _pc_and(z, &px[g, 0], W)
                    for w in range(W):
                        x[w] ^= px[g, w]
                        z[w] ^= pz[g, w]
                _leaf(x, z, q, &bl[0, 0] if n else NULL, n, W, &re, &im)
                o[k] = re + 1j * im
    finally:
        free(x)
        free(z)
    return out


def rotated_monomial_sum(rows, gx, gz, gq, bloch):
    cdef double[:, ::1] r = np.ascontiguousarray(rows, dtype=np.float64)
    cdef int d = r.shape[0]
    if d == 0:
        return 1.0 + 0j
    cdef cnp.uint64_t[:, ::1] px = _pack(gx)
    cdef cnp.uint64_t[:, ::1] pz = _pack(gz)
    cdef cnp.int64_t[::1] q0 = np.ascontiguousarray(gq, dtype=np.int64)
    cdef double[:, ::1] bl = np.ascontiguousarray(bloch, dtype=np.float64)
    cdef int m = r.shape[1]
    cdef int W = px.shape[1]
    cdef int n = bl.shape[0]
    cdef uint64_t* xs = <uint64_t*> malloc((d + 1) * W * sizeof(uint64_t))
    cdef uint64_t* zs = <uint64_t*> malloc((d + 1) * W * sizeof(uint64_t))
    cdef long* qs = <long*> malloc((d + 1) * sizeof(long))
    cdef double* cs = <double*> malloc((d + 1) * sizeof(double))
    cdef int* pos = <int*> malloc(d * sizeof(int))
    cdef double acc_re = 0.0, acc_im = 0.0, re, im
    cdef int level, nu, w
    cdef uint64_t* cx
    cdef uint64_t* cz
    try:
        with nogil:
            for w in range(W):
                xs[w] = 0
                zs[w] = 0
            qs[0] = 0
            cs[0] = 1.0
            level = 0
            pos[0] = -1
            while level >= 0:
                nu = pos[level] + 1
                while nu < m and r[level, nu] == 0.0:
                    nu += 1
                pos[level] = nu
                if nu >= m:
                    level -= 1
                    continue
                cx = xs + level * W
                cz = zs + level * W
                qs[level + 1] = qs[level] + q0[nu] + 2 * _pc_and(cz, &px[nu, 0], W)
                for w in range(W):
                    xs[(level + 1) * W + w] = cx[w] ^ px[nu, w]
                    zs[(level + 1) * W + w] = cz[w] ^ pz[nu, w]
                cs[level + 1] = cs[level] * r[level, nu]
                if level + 1 == d:
                    _leaf(xs + d * W, zs + d * W, qs[d], &bl[0, 0], n, W, &re, &im)
                    acc_re += cs[d] * re
                    acc_im += cs[d] * im
                else:
                    level += 1
                    pos[level] = -1
    finally:
        free(xs)
        free(zs)
        free(qs)
        free(cs)
        free(pos)
    return complex(acc_re, acc_im)
