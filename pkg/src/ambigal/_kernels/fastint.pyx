# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Exact integer matrix primitives, 64-bit compiled backend.

Mirrors the hot functions of the pure module on C integers.  Any value
that cannot be stored in a signed 64-bit word raises OverflowError, and
the backend dispatcher reruns the call on the big-integer path, so
results are always exact.  Products and sums are carried in 128-bit
intermediates with conservative magnitude prechecks.
"""

from cpython cimport array
import array as _array

cdef extern from *:
    ctypedef long long i128 "__int128_t"

cdef long long I64MAX = 9223372036854775807
# Inputs to products are capped so that a dot product of any realistic
# length still fits a signed 128-bit accumulator.
cdef long long PROD_CAP = 1 << 48
cdef long long REDUCE_CAP = 1 << 55
cdef long long REDUCE_THRESHOLD = 256
# Eliminations interleave a size-reduction pass once entries pass this
# bound, well before 64-bit arithmetic could overflow.  Must match the
# pure backend so both produce the same bases when neither overflows.
cdef long long GROWTH_LIMIT = 1 << 36


cdef inline long long chk(i128 v) except? -1:
    if v > <i128> I64MAX or v < -<i128> I64MAX:
        raise OverflowError("value outside 64-bit range")
    return <long long> v


cdef inline long long fdiv(long long a, long long b):
    # Floor division matching the Python // operator.
    cdef long long q = a // b
    if a % b != 0 and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i128 fdiv128(i128 a, i128 b):
    cdef i128 q = a // b
    if a % b != 0 and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef array.array _flatten(A, Py_ssize_t m, Py_ssize_t n, long long *maxabs):
    """Row-major copy of a list-of-rows matrix into an int64 array."""
    cdef array.array buf = _array.array("q", bytes(8 * m * n))
    cdef long long[::1] view = buf
    cdef Py_ssize_t i, j
    cdef long long v, big = 0
    for i in range(m):
        row = A[i]
        if len(row) != n:
            raise ValueError("rows differ in length")
        for j in range(n):
            v = row[j]
            view[i * n + j] = v
            if v < 0:
                v = -v
            if v > big:
                big = v
    maxabs[0] = big
    return buf


def mat_mul(A, B):
    if not A:
        return []
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t k = len(A[0])
    if len(B) != k:
        raise ValueError("inner dimensions differ")
    cdef Py_ssize_t n = len(B[0]) if B else 0
    cdef long long amax = 0, bmax = 0
    cdef array.array abuf = _flatten(A, m, k, &amax)
    cdef array.array bbuf = _flatten(B, k, n, &bmax)
    if amax > PROD_CAP or bmax > PROD_CAP:
        raise OverflowError("entries too large for compiled product")
    cdef long long[::1] a = abuf
    cdef long long[::1] b = bbuf
    cdef Py_ssize_t i, j, t
    cdef i128 acc
    out = []
    for i in range(m):
        row_out = []
        for j in range(n):
            acc = 0
            for t in range(k):
                acc += <i128> a[i * k + t] * <i128> b[t * n + j]
            row_out.append(chk(acc))
        out.append(row_out)
    return out


def rank_bareiss(A):
    cdef Py_ssize_t m = len(A)
    if m == 0:
        return 0
    cdef Py_ssize_t n = len(A[0])
    cdef long long big = 0
    cdef array.array buf = _flatten(A, m, n, &big)
    cdef long long[::1] M = buf
    cdef Py_ssize_t r = 0, c, t, j, piv
    cdef long long prev = 1, pv, lead, swap
    cdef i128 num
    for c in range(n):
        if r >= m:
            break
        piv = -1
        for t in range(r, m):
            if M[t * n + c] != 0:
                piv = t
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                swap = M[r * n + j]
                M[r * n + j] = M[piv * n + j]
                M[piv * n + j] = swap
        pv = M[r * n + c]
        for t in range(r + 1, m):
            lead = M[t * n + c]
            for j in range(c + 1, n):
                num = (<i128> pv * <i128> M[t * n + j]
                       - <i128> lead * <i128> M[r * n + j])
                M[t * n + j] = chk(num // prev)
            M[t * n + c] = 0
        prev = pv
        r += 1
    return r


cdef long long _inv_mod(long long a, long long p):
    cdef i128 result = 1
    cdef i128 base = a % p
    cdef long long e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return <long long> result


def nullity_mod(A, p):
    cdef long long pp = p
    if pp <= 1 or pp > (<long long> 1 << 62):
        raise OverflowError("modulus outside compiled range")
    cdef Py_ssize_t m = len(A)
    if m == 0:
        return 0
    cdef Py_ssize_t n = len(A[0])
    cdef array.array buf = _array.array("q", bytes(8 * m * n))
    cdef long long[::1] M = buf
    cdef Py_ssize_t i, j, c, t, piv, r = 0
    for i in range(m):
        row = A[i]
        if len(row) != n:
            raise ValueError("rows differ in length")
        for j in range(n):
            M[i * n + j] = row[j] % pp
    cdef long long inv, lead, x, swap
    for c in range(n):
        if r >= m:
            break
        piv = -1
        for t in range(r, m):
            if M[t * n + c] != 0:
                piv = t
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                swap = M[r * n + j]
                M[r * n + j] = M[piv * n + j]
                M[piv * n + j] = swap
        inv = _inv_mod(M[r * n + c], pp)
        for j in range(n):
            M[r * n + j] = <long long> ((<i128> M[r * n + j] * inv) % pp)
        for t in range(m):
            if t != r:
                lead = M[t * n + c]
                if lead != 0:
                    for j in range(n):
                        x = <long long> ((<i128> M[t * n + j]
                                          - <i128> lead * M[r * n + j]) % pp)
                        if x < 0:
                            x += pp
                        M[t * n + j] = x
        r += 1
    return n - r


def smith_divisors(A):
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return []
    cdef long long big = 0
    cdef array.array buf = _flatten(A, m, n, &big)
    cdef long long[::1] M = buf
    cdef array.array colbuf
    cdef long long[::1] C
    cdef Py_ssize_t t = 0, i, j, pi, pj, off
    cdef long long best, v, q, pivval, swap
    cdef bint found, clean
    if big > GROWTH_LIMIT:
        # Size-reduce the columns first.  Column operations are
        # unimodular, and the divisors are canonical, so the output is
        # unchanged; the reduction keeps the elimination inside 64 bits.
        colbuf = _array.array("q", bytes(8 * m * n))
        C = colbuf
        for i in range(m):
            for j in range(n):
                C[j * m + i] = M[i * n + j]
        _reduce_cols(C, n, m, 2)
        for i in range(m):
            for j in range(n):
                M[i * n + j] = C[j * m + i]
    out = []
    while t < m and t < n:
        found = False
        while True:
            best = 0
            pi = pj = -1
            for i in range(t, m):
                for j in range(t, n):
                    v = M[i * n + j]
                    if v < 0:
                        v = -v
                    if v != 0 and (pi < 0 or v < best):
                        best = v
                        pi = i
                        pj = j
            if pi < 0:
                break
            found = True
            if pi != t:
                for j in range(n):
                    swap = M[t * n + j]
                    M[t * n + j] = M[pi * n + j]
                    M[pi * n + j] = swap
            if pj != t:
                for i in range(m):
                    swap = M[i * n + t]
                    M[i * n + t] = M[i * n + pj]
                    M[i * n + pj] = swap
            clean = True
            pivval = M[t * n + t]
            for i in range(t + 1, m):
                if M[i * n + t] != 0:
                    q = fdiv(M[i * n + t], pivval)
                    if q != 0:
                        for j in range(n):
                            M[i * n + j] = chk(<i128> M[i * n + j]
                                               - <i128> q * M[t * n + j])
                    if M[i * n + t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if M[t * n + j] != 0:
                    q = fdiv(M[t * n + j], pivval)
                    if q != 0:
                        for i in range(m):
                            M[i * n + j] = chk(<i128> M[i * n + j]
                                               - <i128> q * M[i * n + t])
                    if M[t * n + j] != 0:
                        clean = False
            if not clean:
                continue
            off = -1
            pivval = M[t * n + t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i * n + j] % pivval != 0:
                        off = i
                        break
                if off >= 0:
                    break
            if off < 0:
                break
            for j in range(n):
                M[t * n + j] = chk(<i128> M[t * n + j] + <i128> M[off * n + j])
        if not found:
            break
        v = M[t * n + t]
        out.append(-v if v < 0 else v)
        t += 1
    return out


def sublattice_index(A):
    cdef Py_ssize_t m = len(A)
    if m == 0:
        return 1
    divisors = smith_divisors(A)
    if len(divisors) < m:
        return None
    index = 1
    for d in divisors:
        index *= d
    return index


cdef void _reduce_cols(long long[::1] V, Py_ssize_t k, Py_ssize_t length,
                       int passes) except *:
    """In-place pairwise Lagrange size reduction of k contiguous columns
    of the given length.  Mirrors the pure reduce_columns pass order."""
    cdef Py_ssize_t a, b, i, pos, t
    cdef i128 na, dot, q
    cdef long long big, v
    cdef int p
    cdef bint changed
    big = 0
    for i in range(k * length):
        v = V[i]
        if v < 0:
            v = -v
        if v > big:
            big = v
    if big > REDUCE_CAP:
        raise OverflowError("entries too large for compiled reduction")
    # Norms can exceed 64 bits, so they live in a 128-bit scratch array.
    cdef array.array norm_buf = _array.array("q", bytes(16 * k))
    cdef i128 *norms = <i128 *> norm_buf.data.as_longlongs
    cdef array.array order_buf = _array.array("q", bytes(8 * k))
    cdef long long[::1] order = order_buf
    for a in range(k):
        na = 0
        for i in range(length):
            na += <i128> V[a * length + i] * V[a * length + i]
        norms[a] = na
    for p in range(passes):
        changed = False
        # Stable insertion argsort on the norms.
        for a in range(k):
            order[a] = a
        for a in range(1, k):
            t = order[a]
            pos = a
            while pos > 0 and norms[order[pos - 1]] > norms[t]:
                order[pos] = order[pos - 1]
                pos -= 1
            order[pos] = t
        for i in range(k):
            a = order[i]
            na = norms[a]
            if na == 0:
                continue
            for b in range(k):
                if b == a:
                    continue
                dot = 0
                for t in range(length):
                    dot += <i128> V[a * length + t] * V[b * length + t]
                q = fdiv128(2 * dot + na, 2 * na)
                if q != 0:
                    for t in range(length):
                        V[b * length + t] = chk(<i128> V[b * length + t]
                                                - q * V[a * length + t])
                    dot = 0
                    for t in range(length):
                        dot += <i128> V[b * length + t] * V[b * length + t]
                    norms[b] = dot
                    changed = True
        if not changed:
            break


def saturated_kernel(A):
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return 0, [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    # One vector per column: image part then transform part, matching
    # the pure implementation.
    cdef Py_ssize_t length = m + n
    cdef array.array buf = _array.array("q", bytes(8 * n * length))
    cdef long long[::1] V = buf
    cdef Py_ssize_t i, j, c, row, fixed = 0
    cdef long long v
    for i in range(m):
        rowobj = A[i]
        if len(rowobj) != n:
            raise ValueError("rows differ in length")
        for j in range(n):
            V[j * length + i] = rowobj[j]
    for j in range(n):
        V[j * length + m + j] = 1
    cdef array.array open_buf = _array.array("q", bytes(8 * m))
    cdef long long[::1] open_rows = open_buf
    cdef Py_ssize_t open_count = m
    for i in range(m):
        open_rows[i] = i
    cdef long long best, g, x, y, af, bf, a_val, b_val
    cdef long long old_r, r_, old_x, x_, old_y, y_, qq, tmp
    cdef Py_ssize_t piv_row, piv_col, oi, pos
    cdef i128 t1, t2
    cdef bint grew
    while open_count > 0 and fixed < n:
        best = 0
        piv_row = piv_col = -1
        pos = -1
        for oi in range(open_count):
            row = open_rows[oi]
            for c in range(fixed, n):
                v = V[c * length + row]
                if v < 0:
                    v = -v
                if v != 0 and (piv_row < 0 or v < best):
                    best = v
                    piv_row = row
                    piv_col = c
                    pos = oi
                    if v == 1:
                        break
            if best == 1 and piv_row >= 0:
                break
        if piv_row < 0:
            break
        # Order-preserving removal, matching list.remove in the pure code.
        for oi in range(pos, open_count - 1):
            open_rows[oi] = open_rows[oi + 1]
        open_count -= 1
        if piv_col != fixed:
            for i in range(length):
                tmp = V[fixed * length + i]
                V[fixed * length + i] = V[piv_col * length + i]
                V[piv_col * length + i] = tmp
        row = piv_row
        grew = False
        for c in range(fixed + 1, n):
            b_val = V[c * length + row]
            if b_val == 0:
                continue
            a_val = V[fixed * length + row]
            # Extended gcd with the same update order as the pure code.
            old_r = a_val; r_ = b_val
            old_x = 1; x_ = 0
            old_y = 0; y_ = 1
            while r_ != 0:
                qq = fdiv(old_r, r_)
                tmp = old_r - qq * r_; old_r = r_; r_ = tmp
                tmp = old_x - qq * x_; old_x = x_; x_ = tmp
                tmp = old_y - qq * y_; old_y = y_; y_ = tmp
            if old_r < 0:
                old_r = -old_r; old_x = -old_x; old_y = -old_y
            g = old_r; x = old_x; y = old_y
            af = a_val // g
            bf = b_val // g
            for i in range(length):
                t1 = (<i128> x * V[fixed * length + i]
                      + <i128> y * V[c * length + i])
                t2 = (<i128> af * V[c * length + i]
                      - <i128> bf * V[fixed * length + i])
                V[fixed * length + i] = chk(t1)
                V[c * length + i] = chk(t2)
            if not grew:
                for i in range(length):
                    v = V[c * length + i]
                    if v > GROWTH_LIMIT or v < -GROWTH_LIMIT:
                        grew = True
                        break
        fixed += 1
        if grew and fixed < n:
            _reduce_cols(V[fixed * length:], n - fixed, length, 2)
    cdef Py_ssize_t kcount = n - fixed
    if kcount == 0:
        return fixed, []
    cdef array.array kbuf = _array.array("q", bytes(8 * kcount * n))
    cdef long long[::1] K = kbuf
    cdef long long big = 0
    for c in range(kcount):
        for i in range(n):
            v = V[(fixed + c) * length + m + i]
            K[c * n + i] = v
            if v < 0:
                v = -v
            if v > big:
                big = v
    if big > REDUCE_THRESHOLD:
        _reduce_cols(K, kcount, n, 8)
    kernel = []
    for c in range(kcount):
        kernel.append([K[c * n + i] for i in range(n)])
    return fixed, kernel
