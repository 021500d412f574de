"""Backend selection for the hot kernels.

The compiled Cython module is used when it was built and the exponents fit in
int64; otherwise the pure-Python backend runs.  Set ``DTI_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import os

from dti import _pykernels

# compiled kernels use int64; keep exponents well inside that range
_KERNEL_LIMIT = 2**31

_ckernels = None
if not os.environ.get("DTI_PURE_PYTHON"):
    try:
        from dti import _ckernels  # type: ignore[no-redef]
    except ImportError:
        _ckernels = None

BACKEND = _ckernels.BACKEND if _ckernels is not None else _pykernels.BACKEND


def _fits(rows) -> bool:
    return all(0 <= v < _KERNEL_LIMIT for r in rows for v in r)


def carryfree_digits(total, bounds, p):
    if _ckernels is not None and len(bounds) <= 16:
        return _ckernels.carryfree_digits(total, bounds, p)
    return _pykernels.carryfree_digits(total, bounds, p)


def minimal_rows(rows):
    if _ckernels is not None and _fits(rows):
        return _ckernels.minimal_rows(rows)
    return _pykernels.minimal_rows(rows)


def lcm_minimal(X, Y):
    if _ckernels is not None and _fits(X) and _fits(Y):
        return _ckernels.lcm_minimal(X, Y)
    return _pykernels.lcm_minimal(X, Y)


def divisible_mask(points, gens):
    if _ckernels is not None and _fits(points) and _fits(gens):
        return _ckernels.divisible_mask(points, gens)
    return _pykernels.divisible_mask(points, gens)
