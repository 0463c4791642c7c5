"""Exact integer and GF(2) matrix primitives, pure Python backend.

Matrices are lists of equal-length rows of Python ints. Nothing here
mutates an argument. The compiled backend mirrors the public functions
of this module; this file is the reference implementation and the
fallback for inputs whose intermediates overflow 64-bit arithmetic.
"""
from __future__ import annotations


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    """Product of an m*k and a k*n integer matrix."""
    if not A:
        return []
    k = len(A[0])
    if len(B) != k:
        raise ValueError("inner dimensions differ")
    n = len(B[0]) if B else 0
    cols = [[B[t][j] for t in range(k)] for j in range(n)]
    out = []
    for row in A:
        out.append([sum(x * y for x, y in zip(row, col)) for col in cols])
    return out


def mat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def rank_bareiss(A):
    """Rank over the rationals by fraction-free elimination."""
    M = [row[:] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    r = 0
    prev = 1
    for c in range(n):
        if r >= m:
            break
        piv = next((t for t in range(r, m) if M[t][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        for t in range(r + 1, m):
            row = M[t]
            lead = row[c]
            top = M[r]
            for j in range(c + 1, n):
                row[j] = (pv * row[j] - lead * top[j]) // prev
            row[c] = 0
        prev = pv
        r += 1
    return r


def nullity_mod(A, p):
    """Kernel dimension of A over the field with p elements (p prime).

    This is a lower bound for the rational nullity; callers certify
    exactness through a rank identity before trusting the value.
    """
    M = [[x % p for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    r = 0
    for c in range(n):
        if r >= m:
            break
        piv = next((t for t in range(r, m) if M[t][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [x * inv % p for x in M[r]]
        top = M[r]
        for t in range(m):
            if t != r and M[t][c]:
                lead = M[t][c]
                M[t] = [(x - lead * y) % p for x, y in zip(M[t], top)]
        r += 1
    return n - r


def _ext_gcd(a, b):
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b), g > 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def reduce_columns(cols, passes=8):
    """Pairwise Lagrange size reduction of integer column vectors.

    Repeatedly subtracts rounded projections of shorter vectors from
    longer ones; norms never increase, so the loop terminates.  The
    result spans the same lattice with typically much smaller entries,
    which keeps later gcd eliminations and in-span solves bounded.
    """
    k = len(cols)
    if k <= 1:
        return [list(c) for c in cols]
    cols = [list(c) for c in cols]
    norms = [sum(x * x for x in c) for c in cols]
    for _ in range(passes):
        changed = False
        order = sorted(range(k), key=norms.__getitem__)
        for a in order:
            na = norms[a]
            if na == 0:
                continue
            ca = cols[a]
            for b in range(k):
                if b == a:
                    continue
                cb = cols[b]
                dot = sum(x * y for x, y in zip(ca, cb))
                q = (2 * dot + na) // (2 * na)
                if q:
                    cols[b] = [y - q * x for x, y in zip(ca, cb)]
                    norms[b] = sum(x * x for x in cols[b])
                    changed = True
        if not changed:
            break
    return cols


_REDUCE_THRESHOLD = 256


# Must match the compiled backend so both backends produce the same
# bases whenever the compiled one stays inside 64 bits.
_GROWTH_LIMIT = 1 << 36


def saturated_kernel(A):
    """Rank of A and a basis of its saturated integer kernel.

    Returns (rank, kernel) with kernel a list of column vectors.  The
    basis comes from a unimodular column transform V with A V = [H | 0]
    and H of full column rank: the trailing columns of V span a direct
    summand, so the kernel lattice is saturated.

    Each elimination step pivots on the entry of smallest magnitude in
    the whole unprocessed block, and the unfixed columns get a joint
    size-reduction pass whenever their entries outgrow a bound.  Both
    measures exist because plain column echelon can blow entries up to
    thousands of digits on inputs this module routinely produces.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    # One vector per column: the image part (m entries) followed by the
    # transform part (n entries).  Column operations act on the whole
    # vector, so the two parts can never drift apart.
    vecs = [[A[r][c] for r in range(m)] + [1 if r == c else 0
                                           for r in range(n)]
            for c in range(n)]
    open_rows = list(range(m))
    fixed = 0
    while open_rows and fixed < n:
        piv = best = None
        for row in open_rows:
            for c in range(fixed, n):
                val = vecs[c][row]
                if val:
                    mag = abs(val)
                    if best is None or mag < best:
                        best = mag
                        piv = (row, c)
                        if mag == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        row, c = piv
        open_rows.remove(row)
        vecs[fixed], vecs[c] = vecs[c], vecs[fixed]
        grew = False
        for c in range(fixed + 1, n):
            b = vecs[c][row]
            if b == 0:
                continue
            a = vecs[fixed][row]
            g, x, y = _ext_gcd(a, b)
            af, bf = a // g, b // g
            cf, cc = vecs[fixed], vecs[c]
            vecs[fixed] = [x * u + y * v for u, v in zip(cf, cc)]
            vecs[c] = [af * v - bf * u for u, v in zip(cf, cc)]
            if not grew and any(u > _GROWTH_LIMIT or u < -_GROWTH_LIMIT
                                for u in vecs[c]):
                grew = True
        fixed += 1
        if grew and fixed < n:
            tail = reduce_columns(vecs[fixed:], passes=2)
            vecs[fixed:] = tail
    kernel = [vec[m:] for vec in vecs[fixed:]]
    if kernel and max(abs(x) for col in kernel for x in col) > _REDUCE_THRESHOLD:
        kernel = reduce_columns(kernel)
    return fixed, kernel


_SOLVE_PRIMES = (
    2305843009213693951,  # 2^61 - 1
    2305843009213693669,
    2305843009213693613,
    2305843009213693561,
    2305843009213693549,
    2305843009213693487,
)


def _solve_mod(K, B, p):
    """Solve K X = B mod p for K of full column rank mod p.

    Returns the unique X mod p, None if K drops rank mod p, or the
    string "inconsistent" when the system has no solution mod p.
    """
    m = len(K)
    r = len(K[0])
    w = len(B[0]) if B else 0
    aug = [[K[i][j] % p for j in range(r)] + [B[i][j] % p for j in range(w)]
           for i in range(m)]
    row = 0
    pivots = []
    for col in range(r):
        piv = next((q for q in range(row, m) if aug[q][col]), None)
        if piv is None:
            return None
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][col], p - 2, p)
        aug[row] = [x * inv % p for x in aug[row]]
        for q in range(m):
            if q != row and aug[q][col]:
                lead = aug[q][col]
                rowv = aug[row]
                aug[q] = [(x - lead * y) % p for x, y in zip(aug[q], rowv)]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if row < r:
        return None
    for q in range(row, m):
        if any(aug[q][r:]):
            return "inconsistent"
    return [aug[i][r:] for i in range(r)]


def solve_in_span(K, B):
    """Integer X with K @ X == B, or None when no such X exists.

    K must have full column rank.  Solutions are found mod a few large
    primes and combined; a final exact multiplication certifies the
    result, so a returned X is always correct.  When the columns of K
    span a saturated lattice, containment of B's columns in that span
    already forces X to be integral, so None then certifies
    non-containment up to the vanishing of two independent modular
    solves.
    """
    m = len(K)
    r = len(K[0]) if K else 0
    w = len(B[0]) if B else 0
    if r == 0 or w == 0:
        if any(x for row in B for x in row):
            return None
        return [[0] * w for _ in range(r)]
    lifted = None
    modulus = None
    bad = 0
    for p in _SOLVE_PRIMES:
        got = _solve_mod(K, B, p)
        if got is None:
            continue
        if got == "inconsistent":
            bad += 1
            if bad >= 2:
                return None
            continue
        if lifted is None:
            modulus = p
            lifted = got
        else:
            inv = pow(modulus % p, p - 2, p)
            new_mod = modulus * p
            merged = []
            for i in range(r):
                row = []
                for j in range(w):
                    lo = lifted[i][j]
                    delta = (got[i][j] - lo) * inv % p
                    row.append((lo + modulus * delta) % new_mod)
                merged.append(row)
            modulus = new_mod
            lifted = merged
        half = modulus // 2
        cand = [[x - modulus if x > half else x for x in row]
                for row in lifted]
        if mat_mul(K, cand) == B:
            return cand
    return _solve_exact(K, B)


def _solve_exact(K, B):
    """Fraction-based fallback solve for K X = B with integral X."""
    from fractions import Fraction

    m = len(K)
    r = len(K[0])
    w = len(B[0])
    aug = [[Fraction(K[i][j]) for j in range(r)]
           + [Fraction(B[i][j]) for j in range(w)] for i in range(m)]
    row = 0
    for col in range(r):
        piv = next((q for q in range(row, m) if aug[q][col]), None)
        if piv is None:
            return None
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = aug[row][col]
        aug[row] = [x / inv for x in aug[row]]
        for q in range(m):
            if q != row and aug[q][col]:
                lead = aug[q][col]
                rowv = aug[row]
                aug[q] = [x - lead * y for x, y in zip(aug[q], rowv)]
        row += 1
    for q in range(row, m):
        if any(aug[q][r:]):
            return None
    out = []
    for i in range(r):
        row_out = []
        for j in range(w):
            val = aug[i][r + j]
            if val.denominator != 1:
                return None
            row_out.append(int(val))
        out.append(row_out)
    return out


def smith_divisors(A):
    """Nonzero elementary divisors d1 | d2 | ... of an integer matrix.

    The pivot with smallest magnitude in the remaining block is
    reselected before every reduction pass, which keeps coefficient
    growth tame.
    """
    M = [row[:] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    out = []
    t = 0
    while t < m and t < n:
        while True:
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(M[i][j])
                    if v and (best is None or v < best):
                        best = v
                        piv = (i, j)
            if piv is None:
                break
            pi, pj = piv
            M[t], M[pi] = M[pi], M[t]
            for row in M:
                row[t], row[pj] = row[pj], row[t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    if q:
                        M[i] = [x - q * y for x, y in zip(M[i], M[t])]
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    if q:
                        for row in M:
                            row[j] -= q * row[t]
                    if M[t][j]:
                        clean = False
            if not clean:
                continue
            off = None
            for i in range(t + 1, m):
                if any(M[i][j] % M[t][t] for j in range(t + 1, n)):
                    off = i
                    break
            if off is None:
                break
            M[t] = [x + y for x, y in zip(M[t], M[off])]
        if piv is None:
            break
        out.append(abs(M[t][t]))
        t += 1
    return out


def sublattice_index(A):
    """Index in Z^m of the span of the columns of an m*n matrix.

    Returns None when the columns span a sublattice of rank below m
    (infinite index). Delegates to the two-sided elimination behind
    smith_divisors: one-sided column echelon can blow entries up on
    inputs that the diagonal reduction keeps small.
    """
    m = len(A)
    if m == 0:
        return 1
    divisors = smith_divisors(A)
    if len(divisors) < m:
        return None
    index = 1
    for d in divisors:
        index *= d
    return index


def gf2_pack(A):
    """Rows of an integer matrix reduced mod 2 and packed into bitmasks."""
    out = []
    for row in A:
        acc = 0
        for j, x in enumerate(row):
            if x & 1:
                acc |= 1 << j
        out.append(acc)
    return out


def gf2_mul(A, B):
    """Product of two GF(2) matrices given as lists of row bitmasks.

    A's column count must equal len(B); the result has B's width.
    """
    out = []
    for row in A:
        acc = 0
        r = row
        t = 0
        while r:
            if r & 1:
                acc ^= B[t]
            r >>= 1
            t += 1
        out.append(acc)
    return out


def gf2_rank(rows):
    """Rank of a GF(2) matrix given as a list of row bitmasks."""
    basis = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in basis:
                row ^= basis[top]
            else:
                basis[top] = row
                rank += 1
                break
    return rank


def gf2_column_kernel(rows, ncols):
    """Column-side kernel and column-space data of a GF(2) matrix.

    ``rows`` holds row bitmasks with ``ncols`` meaningful bits.  Returns
    ``(kernel, space)`` where ``kernel`` lists column-combination
    bitmasks spanning the right kernel and ``space`` lists independent
    column vectors (bitmasks over rows) spanning the column space.
    """
    m = len(rows)
    cols = []
    for j in range(ncols):
        acc = 0
        for i in range(m):
            if (rows[i] >> j) & 1:
                acc |= 1 << i
        cols.append(acc)
    basis = {}
    kernel = []
    space = []
    for j in range(ncols):
        v = cols[j]
        comb = 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                bv, bc = basis[top]
                v ^= bv
                comb ^= bc
            else:
                basis[top] = (v, comb)
                space.append(v)
                break
        if v == 0:
            kernel.append(comb)
    return kernel, space


def mod4_profile(lo_rows, hi_rows, ncols):
    """2-adic rank layers of an integer matrix known mod 4.

    The matrix is given as bitplanes: ``lo_rows`` holds the low bits and
    ``hi_rows`` the high bits of each entry reduced mod 4.  Returns
    ``(r1, r2)`` where ``r1`` counts elementary divisors odd at level 1
    (the GF(2) rank) and ``r2`` those with 2-valuation at most 1.  The
    count of solutions of the homogeneous system mod 4 is then
    ``4**ncols / 2**(r1 + r2)``.
    """
    m = len(lo_rows)
    kernel, space = gf2_column_kernel(lo_rows, ncols)
    r1 = ncols - len(kernel)
    col_lo = []
    col_hi = []
    for j in range(ncols):
        lo = 0
        hi = 0
        for i in range(m):
            if (lo_rows[i] >> j) & 1:
                lo |= 1 << i
            if (hi_rows[i] >> j) & 1:
                hi |= 1 << i
        col_lo.append(lo)
        col_hi.append(hi)
    # Halve the image of each mod-2 kernel vector; carry-save addition
    # keeps every column sum exact mod 4.
    halved = []
    for comb in kernel:
        lo = 0
        hi = 0
        j = 0
        c = comb
        while c:
            if c & 1:
                carry = lo & col_lo[j]
                lo ^= col_lo[j]
                hi ^= col_hi[j] ^ carry
            c >>= 1
            j += 1
        if lo:
            raise ValueError("kernel vector does not vanish mod 2")
        halved.append(hi)
    r2 = r1 + gf2_rank(space + halved) - len(space)
    return r1, r2
