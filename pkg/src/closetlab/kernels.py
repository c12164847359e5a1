"""Kernel backend selection.

Prefers the compiled extension when importable, falling back to the pure
Python implementations.  ``CLOSETLAB_KERNELS=python`` (or ``cython``) forces
a backend; forcing ``cython`` when the extension is missing is an error so
misbuilt installs fail loudly instead of silently running slow.
"""

import os

from . import _kernels_py

_choice = os.environ.get("CLOSETLAB_KERNELS", "").strip().lower()

if _choice == "python":
    _impl = _kernels_py
elif _choice == "cython":
    from . import _kernels_cy as _impl
elif _choice == "":
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        _impl = _kernels_py
else:
    raise ImportError(f"unknown CLOSETLAB_KERNELS value: {_choice!r}")

BACKEND = _impl.BACKEND

zeros = _impl.zeros
union_extend = _impl.union_extend
intersect_extend = _impl.intersect_extend
zeta_or = _impl.zeta_or
classify = _impl.classify
fixed_points = _impl.fixed_points
way_below_columns = _impl.way_below_columns
way_below_fast_rows = _impl.way_below_fast_rows
galois_cond3 = _impl.galois_cond3
cond4_pairs = _impl.cond4_pairs
irreducibles = _impl.irreducibles
moore_pairwise = _impl.moore_pairwise
kuratowski_single = _impl.kuratowski_single
