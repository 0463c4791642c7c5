"""Backend selection for the exact matrix kernels.

The compiled extension is used when it imports cleanly, unless the
environment variable AMBIGAL_FORCE_PURE is set to 1. Compiled
functions work on 64-bit integers and raise OverflowError when an
intermediate could leave that range; the wrappers here retry such
calls on the pure Python big-integer implementation, so results are
always exact.
"""
from __future__ import annotations

import os

from . import pure

identity = pure.identity
mat_add = pure.mat_add
mat_sub = pure.mat_sub
gf2_pack = pure.gf2_pack
gf2_column_kernel = pure.gf2_column_kernel
mod4_profile = pure.mod4_profile

_fast = None
if os.environ.get("AMBIGAL_FORCE_PURE") != "1":
    try:
        from . import fastint as _fast
    except ImportError:
        _fast = None

BACKEND = "compiled" if _fast is not None else "pure"


def _dual(name):
    pure_fn = getattr(pure, name)
    fast_fn = getattr(_fast, name, None)
    if fast_fn is None:
        return pure_fn

    def run(*args):
        try:
            return fast_fn(*args)
        except OverflowError:
            return pure_fn(*args)

    run.__name__ = name
    run.__doc__ = pure_fn.__doc__
    return run


mat_mul = _dual("mat_mul")
rank_bareiss = _dual("rank_bareiss")
nullity_mod = _dual("nullity_mod")
saturated_kernel = _dual("saturated_kernel")
solve_in_span = _dual("solve_in_span")
smith_divisors = _dual("smith_divisors")
sublattice_index = _dual("sublattice_index")
gf2_mul = _dual("gf2_mul")
gf2_rank = _dual("gf2_rank")
