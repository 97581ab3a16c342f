"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy implementations in ``_pykernels`` take over.  Set
``SYMDIV_BACKEND=python`` to force the fallback.
"""
import os

import numpy as np

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if os.environ.get("SYMDIV_BACKEND", "").lower() == "python" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "cython"


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def d2_first_violation(values, n, slack, backend=None):
    return BACKENDS[backend or BACKEND].d2_first_violation(_f64(values), n, slack)


def monotone_first_violation(values, n, slack, backend=None):
    return BACKENDS[backend or BACKEND].monotone_first_violation(_f64(values), n, slack)


def singleton_d2_first_violation(values, n, slack, backend=None):
    return BACKENDS[backend or BACKEND].singleton_d2_first_violation(_f64(values), n, slack)


def superset_sum(arr, n, backend=None):
    """Return a new array holding the superset sums of ``arr``."""
    out = _f64(arr).copy()
    BACKENDS[backend or BACKEND].superset_sum(out, n)
    return out


def tsp_half_tours(dist, n, backend=None):
    return np.asarray(BACKENDS[backend or BACKEND].tsp_half_tours(_f64(dist), n))


def steiner_values(dist, n, backend=None):
    return np.asarray(BACKENDS[backend or BACKEND].steiner_values(_f64(dist), n))
