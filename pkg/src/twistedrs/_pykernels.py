"""Pure-Python kernel lane.

Mirror of the compiled `_core` extension: one `FieldOps` object per
(degree, modulus) pair, exposing scalar arithmetic plus the bulk
vector/polynomial/matrix routines the rest of the package is built on.
Small fields (m <= 16) run on NumPy log/exp tables; larger fields fall
back to shift-and-xor multiplication on Python ints.

Conventions shared with the compiled lane:

* field elements are ints below 2^m (polynomial basis, bit i = coeff of X^i)
* vectors and matrices are C-contiguous ``numpy.uint64`` arrays
* polynomials are trimmed uint64 arrays, lowest coefficient first; the
  zero polynomial is the empty array
"""

from __future__ import annotations

import numpy as np

from ._field_common import TABLE_MAX_M, gf2m_mul, gf2m_pow

BACKEND = "python"

_U64 = np.uint64


def _as_vec(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=_U64)


def _trim(p: np.ndarray) -> np.ndarray:
    nz = np.nonzero(p)[0]
    if nz.size == 0:
        return p[:0]
    return p[: int(nz[-1]) + 1]


def _pxor(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    if len(f) < len(g):
        f, g = g, f
    out = f.copy()
    out[: len(g)] ^= g
    return _trim(out)


class FieldOps:
    """Arithmetic kernels for GF(2^m) with a fixed modulus."""

    def __init__(self, m: int, modulus: int, generator: int = 0):
        if not 1 <= m <= 64:
            raise ValueError("supported degrees are 1..64")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._mask = (1 << m) - 1
        self._q1 = self.order - 1
        self._exp = None
        self._log = None
        if generator:
            if m > TABLE_MAX_M:
                raise ValueError("log tables only supported for m <= %d" % TABLE_MAX_M)
            self._build_tables(generator)

    def _build_tables(self, g: int) -> None:
        q1 = self._q1
        exp = np.zeros(2 * q1, dtype=_U64)
        log = np.zeros(self.order, dtype=np.int64)
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = gf2m_mul(x, g, self.modulus, self.m)
        if x != 1:
            raise ValueError("generator does not have full multiplicative order")
        exp[q1:] = exp[:q1]
        self._exp = exp
        self._log = log

    # -- scalars ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        a = int(a)
        b = int(b)
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return int(self._exp[int(self._log[a]) + int(self._log[b])])
        return gf2m_mul(a, b, self.modulus, self.m)

    def inv(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._exp is not None:
            return int(self._exp[self._q1 - int(self._log[a])])
        return gf2m_pow(a, self._q1 - 1, self.modulus, self.m)

    def pow(self, a: int, e: int) -> int:
        a = int(a)
        e = int(e)
        if e < 0:
            raise ValueError("negative exponent; invert first")
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return int(self._exp[(int(self._log[a]) * e) % self._q1])
        return gf2m_pow(a, e, self.modulus, self.m)

    # -- vectors ---------------------------------------------------------

    def vec_mul(self, x, y) -> np.ndarray:
        x = _as_vec(x)
        y = _as_vec(y)
        if len(x) != len(y):
            raise ValueError("length mismatch")
        if self._exp is not None:
            out = np.zeros(len(x), dtype=_U64)
            mask = (x != 0) & (y != 0)
            if mask.any():
                out[mask] = self._exp[self._log[x[mask]] + self._log[y[mask]]]
            return out
        mul = self.mul
        return np.fromiter(
            (mul(int(a), int(b)) for a, b in zip(x.tolist(), y.tolist())),
            dtype=_U64,
            count=len(x),
        )

    def vec_scale(self, x, c: int) -> np.ndarray:
        x = _as_vec(x)
        c = int(c)
        if c == 0:
            return np.zeros(len(x), dtype=_U64)
        if c == 1:
            return x.copy()
        if self._exp is not None:
            out = self._exp[self._log[x] + int(self._log[c])]
            out[x == 0] = 0
            return out
        mul = self.mul
        return np.fromiter(
            (mul(int(a), c) for a in x.tolist()), dtype=_U64, count=len(x)
        )

    def _vec_div(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if np.any(y == 0):
            raise ZeroDivisionError("division by zero field element")
        if self._exp is not None:
            idx = (self._log[x] - self._log[y]) + self._q1
            out = self._exp[idx]
            out[x == 0] = 0
            return out
        mul, inv = self.mul, self.inv
        return np.fromiter(
            (mul(int(a), inv(int(b))) for a, b in zip(x.tolist(), y.tolist())),
            dtype=_U64,
            count=len(x),
        )

    # -- polynomials -----------------------------------------------------

    def poly_mul(self, f, g) -> np.ndarray:
        f = _trim(_as_vec(f))
        g = _trim(_as_vec(g))
        if len(f) == 0 or len(g) == 0:
            return np.zeros(0, dtype=_U64)
        if len(f) > len(g):
            f, g = g, f
        out = np.zeros(len(f) + len(g) - 1, dtype=_U64)
        for i in np.nonzero(f)[0]:
            i = int(i)
            out[i : i + len(g)] ^= self.vec_scale(g, int(f[i]))
        return out

    def poly_divmod(self, f, g) -> tuple[np.ndarray, np.ndarray]:
        f = _trim(_as_vec(f))
        g = _trim(_as_vec(g))
        if len(g) == 0:
            raise ZeroDivisionError("polynomial division by zero")
        dg = len(g) - 1
        if len(f) - 1 < dg:
            return np.zeros(0, dtype=_U64), f.copy()
        rem = f.copy()
        q = np.zeros(len(f) - dg, dtype=_U64)
        ilc = self.inv(int(g[dg]))
        for d in range(len(f) - 1, dg - 1, -1):
            c = int(rem[d])
            if c:
                c = self.mul(c, ilc)
                q[d - dg] = c
                rem[d - dg : d + 1] ^= self.vec_scale(g, c)
        return q, _trim(rem[:dg])

    def poly_eval_many(self, f, xs) -> np.ndarray:
        f = _trim(_as_vec(f))
        xs = _as_vec(xs)
        acc = np.zeros(len(xs), dtype=_U64)
        for d in range(len(f) - 1, -1, -1):
            acc = self.vec_mul(acc, xs)
            acc ^= f[d]
        return acc

    def interpolate(self, xs, ys) -> np.ndarray:
        """Newton interpolation; xs must be distinct (zero divisor otherwise)."""
        xs = _as_vec(xs)
        ys = _as_vec(ys)
        n = len(xs)
        if n != len(ys):
            raise ValueError("length mismatch")
        if n == 0:
            return np.zeros(0, dtype=_U64)
        dd = ys.copy()
        for j in range(1, n):
            dd[j:] = self._vec_div(dd[j:] ^ dd[j - 1 : n - 1], xs[j:] ^ xs[: n - j])
        out = np.zeros(n, dtype=_U64)
        out[0] = dd[n - 1]
        deg = 0
        for i in range(n - 2, -1, -1):
            head = out[: deg + 1].copy()
            out[1 : deg + 2] = head
            out[0] = 0
            out[: deg + 1] ^= self.vec_scale(head, int(xs[i]))
            out[0] ^= dd[i]
            deg += 1
        return _trim(out)

    def partial_euclid(self, a, b, stop_deg: int):
        """Extended Euclid on (a, b), halted at the first remainder of
        degree < stop_deg. Returns (u, v, r) with u*a + v*b = r.

        The remainder sequence starts at a itself; b = 0 degenerates to
        (1, 0, a). A zero remainder produced by an actual division step
        qualifies as "degree below anything".
        """
        a = _trim(_as_vec(a))
        b = _trim(_as_vec(b))
        one = np.ones(1, dtype=_U64)
        zero = np.zeros(0, dtype=_U64)
        if len(a) - 1 < len(b) - 1:
            raise ValueError("partial_euclid requires deg a >= deg b")
        if len(a) - 1 < stop_deg or len(b) == 0:
            return one.copy(), zero.copy(), a.copy()
        r0, r1 = a.copy(), b.copy()
        u0, u1 = one.copy(), zero.copy()
        v0, v1 = zero.copy(), one.copy()
        while len(r1) - 1 >= stop_deg:
            q, r = self.poly_divmod(r0, r1)
            u0, u1 = u1, _pxor(u0, self.poly_mul(q, u1))
            v0, v1 = v1, _pxor(v0, self.poly_mul(q, v1))
            r0, r1 = r1, r
        return u1, v1, r1

    # -- matrices --------------------------------------------------------

    def mat_mul(self, A, B) -> np.ndarray:
        A = np.ascontiguousarray(A, dtype=_U64)
        B = np.ascontiguousarray(B, dtype=_U64)
        r, s = A.shape
        s2, t = B.shape
        if s != s2:
            raise ValueError("inner dimensions differ")
        out = np.zeros((r, t), dtype=_U64)
        for i in range(r):
            acc = out[i]
            for j in range(s):
                aij = int(A[i, j])
                if aij:
                    acc ^= self.vec_scale(B[j], aij)
        return out

    def mat_rref(self, M) -> tuple[int, np.ndarray, list[int]]:
        A = np.array(M, dtype=_U64, copy=True, order="C")
        rows, cols = A.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                A[[r, p]] = A[[p, r]]
            A[r] = self.vec_scale(A[r], self.inv(int(A[r, c])))
            col = A[:, c].copy()
            for i in range(rows):
                if i != r and col[i]:
                    A[i] ^= self.vec_scale(A[r], int(col[i]))
            pivots.append(c)
            r += 1
        return r, A, pivots

    def _reduce_into_basis(self, row: np.ndarray, piv_rows: dict) -> bool:
        """Echelon-insert `row`; True when it added a new pivot."""
        while True:
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                return False
            c = int(nz[0])
            p = piv_rows.get(c)
            if p is None:
                piv_rows[c] = self.vec_scale(row, self.inv(int(row[c])))
                return True
            row = row ^ self.vec_scale(p, int(row[c]))

    def mat_rank(self, M) -> int:
        A = np.ascontiguousarray(M, dtype=_U64)
        rows, cols = A.shape
        piv: dict = {}
        rank = 0
        for i in range(rows):
            if self._reduce_into_basis(A[i].copy(), piv):
                rank += 1
                if rank == cols:
                    break
        return rank

    def square_rank(self, M) -> int:
        """Rank of all pairwise Schur products of the rows of M.

        Products are generated lazily so the elimination can stop as soon
        as the rank saturates the length.
        """
        A = np.ascontiguousarray(M, dtype=_U64)
        rows, cols = A.shape
        piv: dict = {}
        rank = 0
        for i in range(rows):
            for j in range(i, rows):
                if self._reduce_into_basis(self.vec_mul(A[i], A[j]), piv):
                    rank += 1
                    if rank == cols:
                        return rank
        return rank
