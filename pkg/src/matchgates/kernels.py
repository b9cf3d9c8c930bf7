"""Backend selection for the hot kernels.

The compiled extension ``matchgates._ckernels`` is used when it imports; set
``MATCHGATES_PURE_PYTHON=1`` to force the numpy fallback.
"""
from __future__ import annotations

import os

import numpy as np

from matchgates import _pykernels
from matchgates.clifford_algebra import GeneratorRep

try:
    if os.environ.get("MATCHGATES_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python backend requested")
    from matchgates import _ckernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"


def get_backend(name: str | None = None):
    return BACKENDS[name or BACKEND]


def unpack_rep(rep: GeneratorRep) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(gx, gz, gq)`` arrays describing ``c_mu = i**gq X^gx Z^gz``."""
    m = len(rep)
    gx = np.zeros((m, rep.n), dtype=np.uint8)
    gz = np.zeros((m, rep.n), dtype=np.uint8)
    gq = np.empty(m, dtype=np.int64)
    for mu, g in enumerate(rep.generators):
        gx[mu] = g.x_bits
        gz[mu] = g.z_bits
        gq[mu] = g.xz_phase
    return gx, gz, gq


def monomial_values(idx, rep: GeneratorRep, bloch: np.ndarray, backend: str | None = None) -> np.ndarray:
    gx, gz, gq = unpack_rep(rep)
    return get_backend(backend).monomial_values(np.asarray(idx, dtype=np.int64), gx, gz, gq, bloch)


def rotated_monomial_sum(rows, rep: GeneratorRep, bloch: np.ndarray, backend: str | None = None) -> complex:
    gx, gz, gq = unpack_rep(rep)
    return complex(get_backend(backend).rotated_monomial_sum(np.asarray(rows, dtype=float), gx, gz, gq, bloch))
