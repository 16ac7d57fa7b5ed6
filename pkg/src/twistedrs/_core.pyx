# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel lane.

Same API as `_pykernels.FieldOps`; see that module for the conventions
(ints below 2^m for scalars, trimmed uint64 arrays for polynomials,
C-contiguous uint64 matrices).
"""

import numpy as np

from ._field_common import TABLE_MAX_M

BACKEND = "compiled"

ctypedef unsigned long long u64


cdef class FieldOps:
    cdef readonly int m
    cdef object _modulus
    cdef u64 mask
    cdef u64 modlow
    cdef u64 q1
    cdef bint has_tables
    cdef u64[::1] exp_t
    cdef long long[::1] log_t

    def __init__(self, int m, object modulus, object generator=0):
        if not 1 <= m <= 64:
            raise ValueError("supported degrees are 1..64")
        self.m = m
        self._modulus = int(modulus)
        # object arithmetic: 1 << m overflows C ints for m > 31
        mask_int = (int(1) << int(m)) - 1
        self.mask = <u64> mask_int
        self.modlow = <u64> (int(modulus) & mask_int)
        self.q1 = self.mask
        self.has_tables = False
        if generator:
            if m > TABLE_MAX_M:
                raise ValueError("log tables only supported for m <= %d" % TABLE_MAX_M)
            self._build_tables(<u64> int(generator))

    @property
    def modulus(self):
        return self._modulus

    @property
    def order(self):
        return (int(1) << int(self.m))

    cdef void _build_tables(self, u64 g):
        cdef u64 q1 = self.q1
        exp = np.zeros(2 * <long long> q1, dtype=np.uint64)
        log = np.zeros(<long long> q1 + 1, dtype=np.int64)
        cdef u64[::1] ev = exp
        cdef long long[::1] lv = log
        cdef u64 x = 1
        cdef u64 i
        for i in range(q1):
            ev[i] = x
            lv[x] = <long long> i
            x = self._raw_mul(x, g)
        if x != 1:
            raise ValueError("generator does not have full multiplicative order")
        for i in range(q1, 2 * q1):
            ev[i] = ev[i - q1]
        self.exp_t = ev
        self.log_t = lv
        self.has_tables = True

    cdef inline u64 _raw_mul(self, u64 a, u64 b) noexcept:
        cdef u64 r = 0
        cdef u64 carry
        cdef int shift = self.m - 1
        while b:
            if b & 1ULL:
                r ^= a
            b >>= 1
            carry = a >> shift
            a = (a << 1) & self.mask
            if carry:
                a ^= self.modlow
        return r

    cdef inline u64 cmul(self, u64 a, u64 b) noexcept:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return self.exp_t[self.log_t[a] + self.log_t[b]]
        return self._raw_mul(a, b)

    cdef inline u64 cinv(self, u64 a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.has_tables:
            return self.exp_t[<long long> self.q1 - self.log_t[a]]
        return self.cpow_raw(a, self.q1 - 1)

    cdef u64 cpow_raw(self, u64 a, u64 e) noexcept:
        cdef u64 r = 1
        while e:
            if e & 1ULL:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    # -- scalars ---------------------------------------------------------

    def mul(self, a, b):
        return int(self.cmul(<u64> int(a), <u64> int(b)))

    def inv(self, a):
        return int(self.cinv(<u64> int(a)))

    def pow(self, a, e):
        cdef u64 av = <u64> int(a)
        cdef object ei = int(e)
        if ei < 0:
            raise ValueError("negative exponent; invert first")
        if av == 0:
            return 1 if ei == 0 else 0
        if self.has_tables:
            return int(self.exp_t[(self.log_t[av] * ei) % <long long> self.q1])
        return int(self.cpow_raw(av, <u64> ei))

    # -- vectors ---------------------------------------------------------

    def vec_mul(self, x, y):
        cdef u64[::1] xv = np.ascontiguousarray(x, dtype=np.uint64)
        cdef u64[::1] yv = np.ascontiguousarray(y, dtype=np.uint64)
        if xv.shape[0] != yv.shape[0]:
            raise ValueError("length mismatch")
        out = np.zeros(xv.shape[0], dtype=np.uint64)
        cdef u64[::1] ov = out
        cdef Py_ssize_t i
        for i in range(xv.shape[0]):
            ov[i] = self.cmul(xv[i], yv[i])
        return out

    def vec_scale(self, x, c):
        cdef u64[::1] xv = np.ascontiguousarray(x, dtype=np.uint64)
        cdef u64 cv = <u64> int(c)
        out = np.zeros(xv.shape[0], dtype=np.uint64)
        cdef u64[::1] ov = out
        cdef Py_ssize_t i
        for i in range(xv.shape[0]):
            ov[i] = self.cmul(xv[i], cv)
        return out

    # -- polynomials -----------------------------------------------------

    cdef Py_ssize_t _degree(self, u64[::1] p) noexcept:
        cdef Py_ssize_t d = p.shape[0] - 1
        while d >= 0 and p[d] == 0:
            d -= 1
        return d

    def poly_mul(self, f, g):
        cdef u64[::1] fv = np.ascontiguousarray(f, dtype=np.uint64)
        cdef u64[::1] gv = np.ascontiguousarray(g, dtype=np.uint64)
        cdef Py_ssize_t df = self._degree(fv)
        cdef Py_ssize_t dg = self._degree(gv)
        if df < 0 or dg < 0:
            return np.zeros(0, dtype=np.uint64)
        out = np.zeros(df + dg + 1, dtype=np.uint64)
        cdef u64[::1] ov = out
        cdef Py_ssize_t i, j
        cdef u64 fi
        for i in range(df + 1):
            fi = fv[i]
            if fi:
                for j in range(dg + 1):
                    ov[i + j] ^= self.cmul(fi, gv[j])
        return out

    def poly_divmod(self, f, g):
        cdef u64[::1] fv0 = np.ascontiguousarray(f, dtype=np.uint64)
        cdef u64[::1] gv = np.ascontiguousarray(g, dtype=np.uint64)
        cdef Py_ssize_t df = self._degree(fv0)
        cdef Py_ssize_t dg = self._degree(gv)
        if dg < 0:
            raise ZeroDivisionError("polynomial division by zero")
        if df < dg:
            return np.zeros(0, dtype=np.uint64), np.asarray(fv0[: df + 1]).copy()
        rem = np.asarray(fv0[: df + 1]).copy()
        q = np.zeros(df - dg + 1, dtype=np.uint64)
        cdef u64[::1] rv = rem
        cdef u64[::1] qv = q
        cdef u64 ilc = self.cinv(gv[dg])
        cdef Py_ssize_t d, i
        cdef u64 c
        for d in range(df, dg - 1, -1):
            c = rv[d]
            if c:
                c = self.cmul(c, ilc)
                qv[d - dg] = c
                for i in range(dg + 1):
                    rv[d - dg + i] ^= self.cmul(c, gv[i])
        cdef Py_ssize_t dr = dg - 1
        while dr >= 0 and rv[dr] == 0:
            dr -= 1
        return q, rem[: dr + 1]

    def poly_eval_many(self, f, xs):
        cdef u64[::1] fv = np.ascontiguousarray(f, dtype=np.uint64)
        cdef u64[::1] xv = np.ascontiguousarray(xs, dtype=np.uint64)
        cdef Py_ssize_t df = self._degree(fv)
        out = np.zeros(xv.shape[0], dtype=np.uint64)
        cdef u64[::1] ov = out
        cdef Py_ssize_t p, d
        cdef u64 acc, x
        for p in range(xv.shape[0]):
            x = xv[p]
            acc = 0
            for d in range(df, -1, -1):
                acc = self.cmul(acc, x) ^ fv[d]
            ov[p] = acc
        return out

    def interpolate(self, xs, ys):
        cdef u64[::1] xv = np.ascontiguousarray(xs, dtype=np.uint64)
        ydd = np.array(ys, dtype=np.uint64, copy=True)
        cdef u64[::1] dd = ydd
        cdef Py_ssize_t n = xv.shape[0]
        if n != dd.shape[0]:
            raise ValueError("length mismatch")
        if n == 0:
            return np.zeros(0, dtype=np.uint64)
        cdef Py_ssize_t i, j
        cdef u64 den
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                den = xv[i] ^ xv[i - j]
                if den == 0:
                    raise ZeroDivisionError("duplicate interpolation points")
                dd[i] = self.cmul(dd[i] ^ dd[i - 1], self.cinv(den))
        out = np.zeros(n, dtype=np.uint64)
        cdef u64[::1] ov = out
        ov[0] = dd[n - 1]
        cdef Py_ssize_t deg = 0
        cdef u64 x, carry, cur
        for i in range(n - 2, -1, -1):
            x = xv[i]
            carry = 0
            for j in range(deg + 1):
                cur = ov[j]
                ov[j] = carry ^ self.cmul(cur, x)
                carry = cur
            ov[deg + 1] = carry
            ov[0] ^= dd[i]
            deg += 1
        cdef Py_ssize_t dout = n - 1
        while dout >= 0 and ov[dout] == 0:
            dout -= 1
        return out[: dout + 1]

    def partial_euclid(self, a, b, stop_deg):
        cdef u64[::1] av = np.ascontiguousarray(a, dtype=np.uint64)
        cdef u64[::1] bv = np.ascontiguousarray(b, dtype=np.uint64)
        cdef Py_ssize_t da = self._degree(av)
        cdef Py_ssize_t db = self._degree(bv)
        cdef Py_ssize_t stop = stop_deg
        if da < db:
            raise ValueError("partial_euclid requires deg a >= deg b")
        one = np.ones(1, dtype=np.uint64)
        zero = np.zeros(0, dtype=np.uint64)
        if da < stop or db < 0:
            return one, zero, np.asarray(av[: da + 1]).copy()
        cdef Py_ssize_t buflen = da + 2
        r0 = np.zeros(buflen, dtype=np.uint64)
        r1 = np.zeros(buflen, dtype=np.uint64)
        u0 = np.zeros(buflen, dtype=np.uint64)
        u1 = np.zeros(buflen, dtype=np.uint64)
        v0 = np.zeros(buflen, dtype=np.uint64)
        v1 = np.zeros(buflen, dtype=np.uint64)
        r0[: da + 1] = np.asarray(av[: da + 1])
        r1[: db + 1] = np.asarray(bv[: db + 1])
        u0[0] = 1
        v1[0] = 1
        cdef u64[::1] r0v = r0, r1v = r1, u0v = u0, u1v = u1, v0v = v0, v1v = v1
        cdef Py_ssize_t d0 = da, d1 = db
        cdef Py_ssize_t du0 = 0, du1 = -1, dv0 = -1, dv1 = 0
        cdef Py_ssize_t shift, i, tmp
        cdef u64 ilc, c
        cdef u64[::1] swp
        while d1 >= stop:
            ilc = self.cinv(r1v[d1])
            while d0 >= d1:
                c = r0v[d0]
                if c:
                    c = self.cmul(c, ilc)
                    shift = d0 - d1
                    for i in range(d1 + 1):
                        r0v[shift + i] ^= self.cmul(c, r1v[i])
                    for i in range(du1 + 1):
                        u0v[shift + i] ^= self.cmul(c, u1v[i])
                    for i in range(dv1 + 1):
                        v0v[shift + i] ^= self.cmul(c, v1v[i])
                    if du1 >= 0 and shift + du1 > du0:
                        du0 = shift + du1
                    if dv1 >= 0 and shift + dv1 > dv0:
                        dv0 = shift + dv1
                d0 -= 1
                while d0 >= 0 and r0v[d0] == 0:
                    d0 -= 1
            swp = r0v; r0v = r1v; r1v = swp
            swp = u0v; u0v = u1v; u1v = swp
            swp = v0v; v0v = v1v; v1v = swp
            tmp = d0; d0 = d1; d1 = tmp
            tmp = du0; du0 = du1; du1 = tmp
            tmp = dv0; dv0 = dv1; dv1 = tmp
        while du1 >= 0 and u1v[du1] == 0:
            du1 -= 1
        while dv1 >= 0 and v1v[dv1] == 0:
            dv1 -= 1
        uo = np.asarray(u1v[: du1 + 1]).copy()
        vo = np.asarray(v1v[: dv1 + 1]).copy()
        ro = np.asarray(r1v[: d1 + 1]).copy()
        return uo, vo, ro

    # -- matrices --------------------------------------------------------

    def mat_mul(self, A, B):
        cdef u64[:, ::1] a = np.ascontiguousarray(A, dtype=np.uint64)
        cdef u64[:, ::1] b = np.ascontiguousarray(B, dtype=np.uint64)
        if a.shape[1] != b.shape[0]:
            raise ValueError("inner dimensions differ")
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
        cdef u64[:, ::1] ov = out
        cdef Py_ssize_t i, j, k
        cdef u64 aij
        for i in range(a.shape[0]):
            for j in range(a.shape[1]):
                aij = a[i, j]
                if aij:
                    for k in range(b.shape[1]):
                        ov[i, k] ^= self.cmul(aij, b[j, k])
        return out

    def mat_rref(self, M):
        A = np.array(M, dtype=np.uint64, copy=True, order="C")
        cdef u64[:, ::1] a = A
        cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
        cdef Py_ssize_t r = 0, c, p, i, j
        cdef u64 f, ilc, t
        pivots = []
        for c in range(cols):
            if r == rows:
                break
            p = -1
            for i in range(r, rows):
                if a[i, c]:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(cols):
                    t = a[r, j]; a[r, j] = a[p, j]; a[p, j] = t
            ilc = self.cinv(a[r, c])
            if ilc != 1:
                for j in range(cols):
                    a[r, j] = self.cmul(a[r, j], ilc)
            for i in range(rows):
                if i != r and a[i, c]:
                    f = a[i, c]
                    for j in range(cols):
                        a[i, j] ^= self.cmul(f, a[r, j])
            pivots.append(c)
            r += 1
        return r, A, pivots

    cdef int _insert(self, u64[::1] row, u64[:, ::1] basis, char[::1] used,
                     Py_ssize_t cols):
        cdef Py_ssize_t c = 0, j
        cdef u64 f, ilc
        while True:
            while c < cols and row[c] == 0:
                c += 1
            if c == cols:
                return 0
            if used[c]:
                f = row[c]
                for j in range(c, cols):
                    row[j] ^= self.cmul(f, basis[c, j])
                c += 1
            else:
                ilc = self.cinv(row[c])
                for j in range(c, cols):
                    basis[c, j] = self.cmul(ilc, row[j])
                used[c] = 1
                return 1

    def mat_rank(self, M):
        cdef u64[:, ::1] a = np.ascontiguousarray(M, dtype=np.uint64)
        cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
        basis = np.zeros((cols, cols), dtype=np.uint64)
        used = np.zeros(cols, dtype=np.int8)
        scratch = np.zeros(cols, dtype=np.uint64)
        cdef u64[:, ::1] bv = basis
        cdef char[::1] uv = used
        cdef u64[::1] sv = scratch
        cdef Py_ssize_t i, j, rank = 0
        for i in range(rows):
            for j in range(cols):
                sv[j] = a[i, j]
            rank += self._insert(sv, bv, uv, cols)
            if rank == cols:
                break
        return rank

    def square_rank(self, M):
        cdef u64[:, ::1] a = np.ascontiguousarray(M, dtype=np.uint64)
        cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
        basis = np.zeros((cols, cols), dtype=np.uint64)
        used = np.zeros(cols, dtype=np.int8)
        scratch = np.zeros(cols, dtype=np.uint64)
        cdef u64[:, ::1] bv = basis
        cdef char[::1] uv = used
        cdef u64[::1] sv = scratch
        cdef Py_ssize_t i, j, k, rank = 0
        for i in range(rows):
            for j in range(i, rows):
                for k in range(cols):
                    sv[k] = self.cmul(a[i, k], a[j, k])
                rank += self._insert(sv, bv, uv, cols)
                if rank == cols:
                    return rank
        return rank
