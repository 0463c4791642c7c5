"""Benchmark the exact integer kernels, compiled backend against pure.

Two layers are timed.  The first calls each dual-implemented kernel
directly on matrices harvested from the fingerprint pipeline, so the
inputs have the sparsity and entry sizes the package actually
produces.  The second runs a full fingerprint and multiplicity
recovery round trip on a scrambled direct sum, once per backend.

The compiled backend stores entries in 64-bit words and raises
OverflowError when an intermediate could leave that range; the
dispatcher retries such calls on the big-integer path, so both
backends always return identical results.  A direct call that
overflows is reported as "fallback" here.

Run from the repository root:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --ranks 48,96 --repeat 5
"""
from __future__ import annotations

import argparse
import contextlib
import random
import time

import ambigal._kernels as kern
from ambigal import lattice, modules
from ambigal._kernels import pure

try:
    from ambigal._kernels import fastint
except ImportError:
    fastint = None

# Names dispatched through the backend selector.  The end-to-end run
# forces the pure path by rebinding these on the package, which works
# because the pipeline looks them up at call time.
_DUAL = ("mat_mul", "rank_bareiss", "nullity_mod", "saturated_kernel",
         "solve_in_span", "smith_divisors", "sublattice_index",
         "gf2_mul", "gf2_rank")

_PRIME = (1 << 61) - 1


@contextlib.contextmanager
def forced_pure():
    saved = {name: getattr(kern, name) for name in _DUAL}
    for name in _DUAL:
        setattr(kern, name, getattr(pure, name))
    try:
        yield
    finally:
        for name, fn in saved.items():
            setattr(kern, name, fn)


def build_instance(rank_target, seed):
    """A scrambled direct sum of registered modules near the target rank."""
    rng = random.Random(seed)
    names = sorted(modules.MODULES)
    multi = {}
    rank = 0
    while rank < rank_target:
        name = rng.choice(names)
        step = modules.module_rank(name)
        if rank + step > rank_target:
            break
        multi[name] = multi.get(name, 0) + 1
        rank += step
    mat = lattice.shuffle_basis(lattice.multiset_generator(multi), rng)
    return multi, mat


def harvest_inputs(mat):
    """Operator matrices of the kinds the fingerprint pipeline feeds
    to the kernels: differences and partial norms of powers of the
    symmetry generator."""
    n = len(mat)
    ident = pure.identity(n)
    powers = [ident]
    for _ in range(7):
        powers.append(pure.mat_mul(powers[-1], mat))
    norm8 = powers[0]
    for p in powers[1:]:
        norm8 = pure.mat_add(norm8, p)
    return {
        "mat_mul": (mat, mat),
        "rank_bareiss": (pure.mat_sub(powers[4], ident),),
        "nullity_mod": (pure.mat_sub(powers[2], ident), _PRIME),
        "smith_divisors": (norm8,),
        "sublattice_index": (pure.mat_add(powers[4], ident),),
        "saturated_kernel": (pure.mat_sub(powers[4], ident),),
    }


def best_of(fn, args, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best


def fmt(seconds):
    if seconds is None:
        return "fallback"
    return f"{seconds * 1000:9.2f}ms"


def run_micro(rank_target, seed, repeat):
    _, mat = build_instance(rank_target, seed)
    inputs = harvest_inputs(mat)
    print(f"kernel calls on a rank {len(mat)} scrambled direct sum, "
          f"best of {repeat}")
    header = f"  {'function':<18}{'pure':>12}"
    if fastint is not None:
        header += f"{'compiled':>12}{'speedup':>10}"
    print(header)
    for name, args in inputs.items():
        t_pure = best_of(getattr(pure, name), args, repeat)
        line = f"  {name:<18}{fmt(t_pure):>12}"
        if fastint is not None:
            try:
                t_fast = best_of(getattr(fastint, name), args, repeat)
            except OverflowError:
                t_fast = None
            line += f"{fmt(t_fast):>12}"
            if t_fast:
                line += f"{t_pure / t_fast:>9.1f}x"
        print(line)
    print()


def run_round_trip(rank_target, seed, repeat):
    multi, mat = build_instance(rank_target, seed)

    def trip():
        got = lattice.recover_multiplicities(lattice.fingerprint(mat))
        if got != multi:
            raise AssertionError("recovery mismatch during benchmark")

    with forced_pure():
        t_pure = best_of(trip, (), repeat)
    line = f"  {len(mat):>6}{fmt(t_pure):>12}"
    if fastint is not None:
        t_fast = best_of(trip, (), repeat)
        line += f"{fmt(t_fast):>12}{t_pure / t_fast:>9.1f}x"
    print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ranks", default="48,96",
                        help="comma-separated target ranks (default 48,96)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best is kept (default 3)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    ranks = [int(tok) for tok in args.ranks.split(",") if tok]

    print(f"selected backend: {kern.BACKEND}")
    if fastint is None:
        print("compiled extension not available, timing pure only")
    print()
    for rank_target in ranks:
        run_micro(rank_target, args.seed, args.repeat)
    print(f"fingerprint + recovery round trip, best of {args.repeat}")
    header = f"  {'rank':>6}{'pure':>12}"
    if fastint is not None:
        header += f"{'compiled':>12}{'speedup':>10}"
    print(header)
    for rank_target in ranks:
        run_round_trip(rank_target, args.seed, args.repeat)


if __name__ == "__main__":
    main()
