"""Pure numpy implementations of the hot kernels.

Generators are passed unpacked: ``gx``/``gz`` are ``(2n, n)`` uint8 bit arrays
and ``gq[mu]`` is the phase exponent of ``c_mu = i**gq X^gx Z^gz``.
``bloch`` is the ``(n, 4)`` table of single-line expectations indexed by the
letter code ``x + 2 z``.
"""
from __future__ import annotations

import itertools

import numpy as np

_PHASES = np.array([1, 1j, -1, -1j])
_BLOCK = 1 << 16


def _expect(x: np.ndarray, z: np.ndarray, q: np.ndarray, bloch: np.ndarray) -> np.ndarray:
    n = bloch.shape[0]
    q = (q - np.count_nonzero(x & z, axis=1)) % 4
    codes = x + 2 * z
    vals = bloch[np.arange(n), codes].prod(axis=1) if n else np.ones(len(q))
    return _PHASES[q] * vals


def _products(idx: np.ndarray, gx, gz, gq):
    k, d = idx.shape
    n = gx.shape[1]
    x = np.zeros((k, n), dtype=np.uint8)
    z = np.zeros((k, n), dtype=np.uint8)
    q = np.zeros(k, dtype=np.int64)
    for j in range(d):
        g = idx[:, j]
        gxj = gx[g]
        q += gq[g] + 2 * np.count_nonzero(z & gxj, axis=1)
        x ^= gxj
        z ^= gz[g]
    return x, z, q


def monomial_values(idx, gx, gz, gq, bloch) -> np.ndarray:
    """Expectation of every ordered monomial listed in the rows of ``idx``."""
    idx = np.asarray(idx, dtype=np.int64)
    if idx.ndim != 2:
        raise ValueError("idx must be two-dimensional")
    out = np.empty(idx.shape[0], dtype=complex)
    for start in range(0, idx.shape[0], _BLOCK):
        part = idx[start : start + _BLOCK]
        x, z, q = _products(part, gx, gz, gq)
        out[start : start + _BLOCK] = _expect(x, z, q, bloch)
    return out


def rotated_monomial_sum(rows, gx, gz, gq, bloch) -> complex:
    """``sum over nu tuples of prod_j rows[j, nu_j] * <c_nu_1 ... c_nu_d>``.

    Zero coefficients are skipped. The trailing levels are enumerated once as a
    vectorized block; leading levels are looped over in lexicographic order.
    """
    rows = np.asarray(rows, dtype=float)
    d = rows.shape[0]
    if d == 0:
        return 1.0 + 0j
    nz = [np.flatnonzero(rows[j]) for j in range(d)]
    if any(len(v) == 0 for v in nz):
        return 0j
    split = d
    size = 1
    while split > 0 and size * len(nz[split - 1]) <= _BLOCK:
        split -= 1
        size *= len(nz[split])
    if split == d:
        split = d - 1
    suffix = np.array(list(itertools.product(*nz[split:])), dtype=np.int64)
    sx, sz, sq = _products(suffix, gx, gz, gq)
    scoef = np.ones(len(suffix))
    for j in range(split, d):
        scoef *= rows[j, suffix[:, j - split]]
    sx_count = sx.astype(np.int64)
    total = 0j
    n = gx.shape[1]
    for prefix in itertools.product(*nz[:split]):
        coef = 1.0
        px = np.zeros(n, dtype=np.uint8)
        pz = np.zeros(n, dtype=np.uint8)
        pq = 0
        for j, nu in enumerate(prefix):
            coef *= rows[j, nu]
            pq += int(gq[nu]) + 2 * int(np.count_nonzero(pz & gx[nu]))
            px ^= gx[nu]
            pz ^= gz[nu]
        q = pq + sq + 2 * (sx_count @ pz.astype(np.int64))
        vals = _expect(px ^ sx, pz ^ sz, q, bloch)
        total += coef * np.dot(scoef, vals)
    return complex(total)
