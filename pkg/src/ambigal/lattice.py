"""Integer lattices with an order-8 cyclic symmetry.

Every registered module type is realized as an explicit matrix for the
symmetry generator acting on a free integer lattice in a standard
basis.  From such a matrix (of any rank, e.g. a direct sum in a
scrambled basis) this module computes a fingerprint of isomorphism
invariants strong enough to recover the multiset of indecomposable
summands by solving one linear system, and exposes that recovery.

All invariants are additive across direct sums:

* rank and rational character (multiplicities of the four rational
  irreducible representations),
* Tate cohomology pair sizes for each subgroup of the cyclic group,
  reported as log2 of the group order,
* coranks of the powers of (S + I) mod 2, i.e. the Jordan filtration
  of the reduction mod 2,
* the same data for the induced action on the sublattices fixed by
  the subgroups of order 2 and 4.

Presentations follow a uniform scheme.  A module is a list of
generator blocks (label, level, rhs): the block contributes basis
vectors g, s*g, ... of size 1, 1, 2, 4 for level 0, 1, 2, 3, and the
generator satisfies Phi(s) g = rhs where Phi is the cyclotomic
polynomial of order 2**level and rhs is an integer combination of
basis vectors from other blocks.  Level-0 blocks are fixed vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from . import _kernels as kern
from . import modules


class LatticeError(Exception):
    """An internal consistency identity failed on the given matrix."""


class RecoveryInfeasible(Exception):
    """No multiset of registered module types has this fingerprint."""


class RecoveryAmbiguous(Exception):
    """More than one multiset matches; cannot happen once the
    reference fingerprint matrix has full column rank."""


_BLOCK_SIZE = {0: 1, 1: 1, 2: 2, 3: 4}

# rhs entries may reference any basis label of a later block, or s<label>
# for the shifted vector of a level-2 block.
_G_TAIL = (("b", 2, {"c": 1}), ("c", 1, {"d": 1}), ("d", 0, {}))
_H_TAIL = (("b", 2, {"d": 1}), ("c", 1, {"d": 1}), ("d", 0, {}))
_I_TAIL = (("b", 2, {}), ("c", 1, {"d": 1}), ("d", 0, {}))
_L_TAIL = (("b", 2, {"c": 1, "d": 1}), ("c", 1, {}), ("d", 0, {}))
_M_TAIL = (("b", 2, {}), ("c", 1, {}), ("d", 0, {}))

PRESENTATIONS = {
    "R0": (("d", 0, {}),),
    "R1": (("c", 1, {}),),
    "R2": (("b", 2, {}),),
    "R3": (("a", 3, {}),),
    "GR2": (("c", 1, {"d": 1}), ("d", 0, {})),
    "G": _G_TAIL,
    "H": _H_TAIL,
    "I": _I_TAIL,
    "L": _L_TAIL,
    "M": _M_TAIL,
    "G1": (("a", 3, {"b": 1}),) + _G_TAIL,
    "G2": (("a", 3, {"sb": 1, "b": -1}),) + _G_TAIL,
    "G3": (("a", 3, {"c": 1}),) + _G_TAIL,
    "G4": (("a", 3, {"d": 1}),) + _G_TAIL,
    "H1": (("a", 3, {"sb": 1, "b": -1, "c": 1}),) + _H_TAIL,
    "H2": (("a", 3, {"d": 1}),) + _H_TAIL,
    "I1": (("a", 3, {"b": 1, "c": 1}),) + _I_TAIL,
    "I2": (("a", 3, {"b": 1, "d": 1}),) + _I_TAIL,
    "L1": (("a", 3, {"b": 1}),) + _L_TAIL,
    "L2": (("a", 3, {"sb": 1, "b": -1}),) + _L_TAIL,
    "L3": (("a", 3, {"c": 1, "d": 1}),) + _L_TAIL,
    "M1": (("a", 3, {"b": 1, "c": 1, "d": 1}),) + _M_TAIL,
    "H12": (("a1", 3, {"sb": 1, "b": -1, "c": 1}),
            ("a2", 3, {"d": 1})) + _H_TAIL,
    "H1G": (("a1", 3, {"sb1": 1, "b1": -1, "c1": 1}),
            ("b1", 2, {"d1": 1, "d2": 1}),
            ("c1", 1, {"d1": 1}),
            ("d1", 0, {}),
            ("b2", 2, {"c2": 1}),
            ("c2", 1, {"d2": 1}),
            ("d2", 0, {})),
    "H1L": (("a1", 3, {"sb1": 1, "b1": -1, "c1": 1}),
            ("b1", 2, {"d1": 1, "c2": 1, "d2": 1}),
            ("c1", 1, {"d1": 1}),
            ("d1", 0, {}),
            ("b2", 2, {"c2": 1, "d2": 1}),
            ("c2", 1, {}),
            ("d2", 0, {})),
}


def basis_labels(name):
    labels = []
    for glabel, level, _rhs in PRESENTATIONS[name]:
        if level == 3:
            labels += [glabel, "s" + glabel, "ss" + glabel, "sss" + glabel]
        elif level == 2:
            labels += [glabel, "s" + glabel]
        else:
            labels.append(glabel)
    return labels


def generator_matrix(name):
    """Matrix of the symmetry generator for one registered type.

    Accepts the two decomposable convenience names as well; those come
    out as the block sum of their indecomposable parts would.
    """
    labels = basis_labels(name)
    idx = {lab: k for k, lab in enumerate(labels)}
    n = len(labels)
    mat = [[0] * n for _ in range(n)]

    def close(col, glabel, rhs, fix):
        if fix:
            mat[idx[glabel]][col] = 1
            return
        mat[idx[glabel]][col] = -1
        for lab, coeff in rhs.items():
            mat[idx[lab]][col] += coeff

    for glabel, level, rhs in PRESENTATIONS[name]:
        if level == 3:
            mat[idx["s" + glabel]][idx[glabel]] = 1
            mat[idx["ss" + glabel]][idx["s" + glabel]] = 1
            mat[idx["sss" + glabel]][idx["ss" + glabel]] = 1
            close(idx["sss" + glabel], glabel, rhs, fix=False)
        elif level == 2:
            mat[idx["s" + glabel]][idx[glabel]] = 1
            close(idx["s" + glabel], glabel, rhs, fix=False)
        elif level == 1:
            close(idx[glabel], glabel, rhs, fix=False)
        else:
            if rhs:
                raise LatticeError("fixed generator cannot carry a relation")
            close(idx[glabel], glabel, rhs, fix=True)
    return mat


def direct_sum(mats):
    """Block-diagonal sum of generator matrices."""
    n = sum(len(m) for m in mats)
    out = [[0] * n for _ in range(n)]
    at = 0
    for m in mats:
        k = len(m)
        for r in range(k):
            row = out[at + r]
            src = m[r]
            for c in range(k):
                row[at + c] = src[c]
        at += k
    return out


def multiset_generator(mults):
    """Generator matrix for a direct sum given as name -> multiplicity."""
    mats = []
    for name in sorted(mults):
        count = mults[name]
        if count < 0:
            raise ValueError("negative multiplicity")
        single = generator_matrix(name)
        mats.extend(single for _ in range(count))
    return direct_sum(mats)


def shuffle_basis(mat, rng, ops=None):
    """Conjugate by a random unimodular change of basis, exactly.

    Applies paired row and column operations, so the result is
    U mat U^-1 for an implicit unimodular U. Entries stay small
    because the shear coefficients are +-1.
    """
    n = len(mat)
    out = [row[:] for row in mat]
    if n < 2:
        return out
    if ops is None:
        ops = 2 * n
    for _ in range(ops):
        kind = rng.randrange(3)
        j = rng.randrange(n)
        k = rng.randrange(n - 1)
        if k >= j:
            k += 1
        if kind == 0:
            out[j], out[k] = out[k], out[j]
            for row in out:
                row[j], row[k] = row[k], row[j]
        elif kind == 1:
            out[j] = [-x for x in out[j]]
            for row in out:
                row[j] = -row[j]
        else:
            c = rng.choice((-1, 1))
            out[j] = [x + c * y for x, y in zip(out[j], out[k])]
            for row in out:
                row[k] -= c * row[j]
    return out


@dataclass(frozen=True)
class Fingerprint:
    """Additive isomorphism invariants of an order-8 lattice.

    tate lists (log2 size of the norm quotient, log2 size of the
    kernel quotient) for the subgroups of order 2, 4, 8 in that order.
    filt lists coranks of (S + I)^k mod 2 for k = 1..7.  fix2 is the
    sublattice fixed by the order-2 subgroup, with the induced order-4
    action: its tate entries cover that action's subgroups of order 2
    and 4, its filt covers k = 1..3.  fix4 is fixed by the order-4
    subgroup, with an induced order-2 action and k = 1 only.  co2 is
    the quotient by the saturated image of S^4 - I, the coinvariant
    side of fix2, again with an induced order-4 action and the same
    coordinate layout.  hom4 counts, as log2, the equivariant maps
    into the lattice reduced mod 4 from each probe type in PROBE_TYPES.
    """
    rank: int
    char: tuple
    tate: tuple
    filt: tuple
    fix2_tate: tuple
    fix2_filt: tuple
    fix4_tate: tuple
    fix4_filt: tuple
    co2_tate: tuple
    co2_filt: tuple
    hom4: tuple

    def vector(self):
        flat = [self.rank, *self.char]
        for pair in self.tate:
            flat.extend(pair)
        flat.extend(self.filt)
        for pair in self.fix2_tate:
            flat.extend(pair)
        flat.extend(self.fix2_filt)
        flat.extend(self.fix4_tate)
        flat.extend(self.fix4_filt)
        for pair in self.co2_tate:
            flat.extend(pair)
        flat.extend(self.co2_filt)
        flat.extend(self.hom4)
        return tuple(flat)


# Smallest probe set found that makes the recovery system invertible:
# without the hom4 block it has corank 4, and without the co2 block as
# well, corank 6.
PROBE_TYPES = ("H2", "I2", "L3", "M1")

COORD_NAMES = (
    ("rank",)
    + tuple(f"char{k}" for k in range(4))
    + tuple(f"tate{o}_{w}" for o in (2, 4, 8) for w in ("norm", "ker"))
    + tuple(f"filt{k}" for k in range(1, 8))
    + tuple(f"fix2_tate{o}_{w}" for o in (2, 4) for w in ("norm", "ker"))
    + tuple(f"fix2_filt{k}" for k in range(1, 4))
    + ("fix4_tate2_norm", "fix4_tate2_ker")
    + ("fix4_filt1",)
    + tuple(f"co2_tate{o}_{w}" for o in (2, 4) for w in ("norm", "ker"))
    + tuple(f"co2_filt{k}" for k in range(1, 4))
    + tuple(f"hom4_{name}" for name in PROBE_TYPES)
)

_CHAR_PRIMES = (1000003, 999999937, 2147483647)


def _columns_matrix(cols):
    if not cols:
        return []
    n = len(cols[0])
    return [[col[r] for col in cols] for r in range(n)]


def _certified_char(parts, n):
    """Rational kernel dimensions of the four isotypic projectors.

    A mod-p kernel dimension only bounds the rational one from above,
    but the four true values sum to the rank, so equality in the sum
    certifies every term.  Falls back to exact integer ranks if every
    prime in the list fails.
    """
    for p in _CHAR_PRIMES:
        nulls = [kern.nullity_mod(a, p) for a in parts]
        if sum(nulls) == n and nulls[2] % 2 == 0 and nulls[3] % 4 == 0:
            return (nulls[0], nulls[1], nulls[2] // 2, nulls[3] // 4)
    nulls = [n - kern.rank_bareiss(a) for a in parts]
    if sum(nulls) != n or nulls[2] % 2 or nulls[3] % 4:
        raise LatticeError("matrix is not an order-8 lattice action")
    return (nulls[0], nulls[1], nulls[2] // 2, nulls[3] // 4)


def _divisor_log2(image):
    """Rank of a matrix and the log2 order of its cokernel torsion.

    The torsion order is the product of the elementary divisors, which
    here must be a power of two.
    """
    divisors = kern.smith_divisors(image)
    size = 1
    for d in divisors:
        size *= d
    if size & (size - 1):
        raise LatticeError("cohomology order is not a 2-power")
    return len(divisors), size.bit_length() - 1


def _tate_pair(tmat, nmat, dim):
    """Tate pair (log2 |ker T / im N|, log2 |ker N / im T|).

    T and N are given as image matrices of two maps composing to zero
    both ways on a common domain of rank dim.  Both kernels are
    saturated, so when the two ranks certify that each image spans its
    kernel rationally, each quotient order equals the product of the
    elementary divisors of the image matrix alone.  No kernel basis and
    no membership solve is needed, which matters because those paths
    suffer from entry growth at large rank.
    """
    rt, vt = _divisor_log2(tmat)
    rn, vn = _divisor_log2(nmat)
    if rt + rn != dim:
        raise LatticeError("cohomology group is not finite")
    return vn, vt


def _filtration(mat, depth):
    """Coranks of (mat mod 2)^k for k = 1..depth."""
    n = len(mat)
    base = kern.gf2_pack(mat)
    power = base
    out = []
    for _ in range(depth):
        out.append(n - kern.gf2_rank(power))
        power = kern.gf2_mul(power, base)
    return tuple(out)


def _sub_filtration(kernel, plus_mat, depth):
    """Coranks of the action induced by plus_mat on a stable saturated
    sublattice, reduced mod 2, for powers 1..depth."""
    if not kernel:
        return (0,) * depth
    basis = _columns_matrix(kernel)
    induced = kern.solve_in_span(basis, kern.mat_mul(plus_mat, basis))
    if induced is None:
        raise LatticeError("sublattice is not stable under the action")
    return _filtration(induced, depth)


def _transpose(mat):
    return [list(row) for row in zip(*mat)] if mat else []


def _hom4_count(name, phis, mat):
    """log2 of the number of equivariant maps from a presented type
    into the target action reduced mod 4.

    A map is a choice of image for each generator of the presentation,
    one target vector per generator, subject to its relation rows; the
    solution count follows from the first two 2-adic rank layers of
    that linear system, which only needs the system mod 4.
    """
    n = len(mat)
    blocks = PRESENTATIONS[name]
    gens = [block[0] for block in blocks]
    gidx = {g: k for k, g in enumerate(gens)}
    ncols = len(gens) * n
    lo_rows = []
    hi_rows = []
    for glabel, level, rhs in blocks:
        cols_by_gen = {gidx[glabel]: [row[:] for row in phis[level]]}
        for ref, coeff in rhs.items():
            if ref.startswith("s") and ref[1:] in gidx:
                tgt = gidx[ref[1:]]
                add = [[-coeff * mat[r][c] for c in range(n)]
                       for r in range(n)]
            else:
                tgt = gidx[ref]
                add = [[-coeff if r == c else 0 for c in range(n)]
                       for r in range(n)]
            cur = cols_by_gen.setdefault(tgt, [[0] * n for _ in range(n)])
            for r in range(n):
                row = cur[r]
                inc = add[r]
                for c in range(n):
                    row[c] += inc[c]
        for r in range(n):
            lo = 0
            hi = 0
            for gk, block in cols_by_gen.items():
                base = gk * n
                row = block[r]
                for c in range(n):
                    v = row[c] & 3
                    if v & 1:
                        lo |= 1 << (base + c)
                    if v & 2:
                        hi |= 1 << (base + c)
            lo_rows.append(lo)
            hi_rows.append(hi)
    r1, r2 = kern.mod4_profile(lo_rows, hi_rows, ncols)
    return 2 * ncols - r1 - r2


def _coinvariant_block(t_by_order, plus1, plus2, norm4):
    """Tate pairs and filtration of the quotient by the saturated image
    of the order-2 difference map, under its induced order-4 action.

    The left kernel of S^4 - I projects the lattice onto that quotient.
    The projection kernel sits inside every kernel taken there, so the
    projected kernels are saturated and the divisor identity behind
    _tate_pair applies to the projected image matrices directly.
    """
    left = kern.saturated_kernel(_transpose(t_by_order[2]))[1]
    if not left:
        return ((0, 0), (0, 0)), (0, 0, 0)
    proj = [list(col) for col in left]
    r = len(proj)
    pairs = (
        _tate_pair(kern.mat_mul(proj, t_by_order[4]),
                   kern.mat_mul(proj, plus2), r),
        _tate_pair(kern.mat_mul(proj, t_by_order[8]),
                   kern.mat_mul(proj, norm4), r),
    )
    cur = proj
    filt = []
    for _ in range(3):
        cur = kern.mat_mul(cur, plus1)
        filt.append(r - kern.gf2_rank(kern.gf2_pack(cur)))
    return pairs, tuple(filt)


def fingerprint(mat):
    """Compute the full invariant fingerprint of a generator matrix."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fingerprint(0, (0, 0, 0, 0), (((0, 0),) * 3), (0,) * 7,
                           ((0, 0), (0, 0)), (0, 0, 0), (0, 0), (0,),
                           ((0, 0), (0, 0)), (0, 0, 0),
                           (0,) * len(PROBE_TYPES))
    ident = kern.identity(n)
    sq = kern.mat_mul(mat, mat)
    quad = kern.mat_mul(sq, sq)
    if kern.mat_mul(quad, quad) != ident:
        raise LatticeError("matrix does not have order dividing 8")

    plus1 = kern.mat_add(mat, ident)
    plus2 = kern.mat_add(sq, ident)
    plus4 = kern.mat_add(quad, ident)
    char = _certified_char(
        [kern.mat_sub(mat, ident), plus1, plus2, plus4], n)

    t_by_order = {
        2: kern.mat_sub(quad, ident),
        4: kern.mat_sub(sq, ident),
        8: kern.mat_sub(mat, ident),
    }
    n_by_order = {
        2: plus4,
        4: kern.mat_mul(plus2, plus4),
    }
    n_by_order[8] = kern.mat_mul(plus1, n_by_order[4])

    tate = tuple(
        _tate_pair(t_by_order[o], n_by_order[o], n) for o in (2, 4, 8))

    filt = _filtration(plus1, 7)

    # Tower invariants are all computed in the ambient coordinates:
    # inducing small matrices on sub- or quotient lattices and then
    # recursing blows entries up, while every restricted kernel here is
    # already an ambient kernel of a small product.  Restricting a map
    # just multiplies it into the fixed basis, and the divisor identity
    # turns each restricted quotient into a Smith computation.
    norm4 = kern.mat_mul(plus1, plus2)

    fix2 = kern.saturated_kernel(t_by_order[2])[1]
    if fix2:
        basis2 = _columns_matrix(fix2)
        k2 = len(fix2)
        fix2_tate = (
            _tate_pair(kern.mat_mul(t_by_order[4], basis2),
                       kern.mat_mul(plus2, basis2), k2),
            _tate_pair(kern.mat_mul(t_by_order[8], basis2),
                       kern.mat_mul(norm4, basis2), k2),
        )
        fix2_filt = _sub_filtration(fix2, plus1, 3)
    else:
        fix2_tate = ((0, 0), (0, 0))
        fix2_filt = (0, 0, 0)

    fix4 = kern.saturated_kernel(t_by_order[4])[1]
    if fix4:
        basis4 = _columns_matrix(fix4)
        fix4_tate = _tate_pair(kern.mat_mul(t_by_order[8], basis4),
                               kern.mat_mul(plus1, basis4), len(fix4))
        fix4_filt = _sub_filtration(fix4, plus1, 1)
    else:
        fix4_tate = (0, 0)
        fix4_filt = (0,)

    co2_tate, co2_filt = _coinvariant_block(
        t_by_order, plus1, plus2, norm4)

    phis = {0: t_by_order[8], 1: plus1, 2: plus2, 3: plus4}
    hom4 = tuple(_hom4_count(name, phis, mat) for name in PROBE_TYPES)

    return Fingerprint(n, char, tate, filt,
                       fix2_tate, fix2_filt, fix4_tate, fix4_filt,
                       co2_tate, co2_filt, hom4)


@cache
def reference_fingerprints():
    """Fingerprints of the 23 indecomposable types."""
    return {name: fingerprint(generator_matrix(name))
            for name in sorted(modules.MODULES)}


@cache
def _reference_system():
    refs = reference_fingerprints()
    names = tuple(sorted(refs))
    rows = len(COORD_NAMES)
    matrix = [[Fraction(refs[name].vector()[r]) for name in names]
              for r in range(rows)]
    return names, matrix


def _solve_unique(matrix, target):
    """Solve an overdetermined system with a unique rational solution.

    Returns the solution vector, or None if inconsistent. Raises
    RecoveryAmbiguous if the coefficient matrix is rank deficient.
    """
    rows = len(matrix)
    cols = len(matrix[0])
    aug = [matrix[r][:] + [Fraction(target[r])] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((t for t in range(r, rows) if aug[t][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for t in range(rows):
            if t != r and aug[t][c]:
                lead = aug[t][c]
                aug[t] = [x - lead * y for x, y in zip(aug[t], aug[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < cols:
        raise RecoveryAmbiguous(
            "reference fingerprints are rank deficient")
    for t in range(r, rows):
        if aug[t][cols]:
            return None
    out = [Fraction(0)] * cols
    for k, c in enumerate(pivots):
        out[c] = aug[k][cols]
    return out


def recover_multiplicities(target):
    """Multiset of indecomposable types matching a fingerprint.

    Accepts a generator matrix or a Fingerprint. Raises
    RecoveryInfeasible when no nonnegative integer combination of the
    reference fingerprints matches.
    """
    fp = target if isinstance(target, Fingerprint) else fingerprint(target)
    names, matrix = _reference_system()
    sol = _solve_unique(matrix, fp.vector())
    if sol is None:
        raise RecoveryInfeasible("fingerprint matches no multiset")
    mults = {}
    for name, val in zip(names, sol):
        if val.denominator != 1 or val < 0:
            raise RecoveryInfeasible("fingerprint matches no multiset")
        if val:
            mults[name] = int(val)
    return mults


def check_presentations():
    """Structural identities for every registered presentation.

    Checks order 8, unimodularity, and agreement of rank and rational
    character with the module registry. Returns the number checked.
    """
    count = 0
    for name in sorted(PRESENTATIONS):
        mat = generator_matrix(name)
        n = len(mat)
        if n != modules.module_rank(name):
            raise LatticeError(f"{name}: rank mismatch")
        sq = kern.mat_mul(mat, mat)
        quad = kern.mat_mul(sq, sq)
        if kern.mat_mul(quad, quad) != kern.identity(n):
            raise LatticeError(f"{name}: generator order is not 8")
        if kern.sublattice_index(mat) != 1:
            raise LatticeError(f"{name}: generator is not unimodular")
        ident = kern.identity(n)
        parts = [kern.mat_sub(mat, ident), kern.mat_add(mat, ident),
                 kern.mat_add(sq, ident), kern.mat_add(quad, ident)]
        if _certified_char(parts, n) != modules.module_char(name):
            raise LatticeError(f"{name}: rational character mismatch")
        count += 1
    return count
