"""Univariate polynomials over a tower's top field.

Dense coefficient storage, lowest degree first, schoolbook products and
O(n^2) interpolation: the code lengths handled here (n <= 255) never pay
for asymptotically fast machinery, and the kernels stay auditable.

The zero polynomial has degree NEG_INF (a true sentinel, not -1), which
keeps degree comparisons in the key-equation stop condition honest.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldElement, FieldTower

_U64 = np.uint64

NEG_INF = float("-inf")


def _trim(arr: np.ndarray) -> np.ndarray:
    nz = np.nonzero(arr)[0]
    if nz.size == 0:
        return arr[:0]
    return arr[: int(nz[-1]) + 1]


class Poly:
    """Immutable polynomial; `coeffs` is a trimmed uint64 array."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs):
        self.tower = tower
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == _U64:
            arr = np.ascontiguousarray(coeffs)
        else:
            arr = tower.coerce_vector(list(coeffs))
        self.coeffs = _trim(arr)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, tower: FieldTower) -> "Poly":
        return cls(tower, np.zeros(0, dtype=_U64))

    @classmethod
    def constant(cls, tower: FieldTower, c) -> "Poly":
        return cls(tower, [c])

    @classmethod
    def monomial(cls, tower: FieldTower, degree: int, c=1) -> "Poly":
        arr = np.zeros(degree + 1, dtype=_U64)
        arr[degree] = tower._val(c)
        return cls(tower, arr)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if len(self.coeffs) else NEG_INF

    def coefficient(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.tower.compatible(other.tower) and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __hash__(self):
        return hash((self.tower.modulus, self.coeffs.tobytes()))

    def __bool__(self):
        return len(self.coeffs) > 0

    def __repr__(self):
        if not self:
            return "Poly(0)"
        terms = [
            f"0x{int(c):x}*X^{i}" for i, c in enumerate(self.coeffs) if c
        ]
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic ----------------------------------------------------------

    def _other(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, np.integer, FieldElement)):
            return Poly.constant(self.tower, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        g = self._other(other)
        f = self.coeffs
        gc = g.coeffs
        if len(f) < len(gc):
            f, gc = gc, f
        out = f.copy()
        out[: len(gc)] ^= gc
        return Poly(self.tower, out)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        g = self._other(other)
        return Poly(self.tower, self.tower.ops.poly_mul(self.coeffs, g.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        g = self._other(other)
        q, r = self.tower.ops.poly_divmod(self.coeffs, g.coeffs)
        return Poly(self.tower, q), Poly(self.tower, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, c) -> "Poly":
        return Poly(self.tower, self.tower.ops.vec_scale(self.coeffs, self.tower._val(c)))

    def shift(self, d: int) -> "Poly":
        """Multiply by X^d."""
        if not self or d == 0:
            return self if d == 0 else Poly(self.tower, self.coeffs)
        out = np.zeros(len(self.coeffs) + d, dtype=_U64)
        out[d:] = self.coeffs
        return Poly(self.tower, out)

    def __call__(self, x) -> FieldElement:
        xv = self.tower._val(x)
        acc = 0
        ops = self.tower.ops
        for c in self.coeffs[::-1].tolist():
            acc = ops.mul(acc, xv) ^ c
        return self.tower.element(acc)


def eval_vector(f: Poly, alpha) -> np.ndarray:
    """[f(a) for a in alpha] by Horner; alpha entries must be distinct."""
    pts = f.tower.coerce_vector(alpha)
    if len(np.unique(pts)) != len(pts):
        raise ValueError("evaluation points must be distinct")
    return f.tower.ops.poly_eval_many(f.coeffs, pts)


def vanishing_poly(tower: FieldTower, alpha) -> Poly:
    """prod (X - a) over the evaluation points."""
    pts = tower.coerce_vector(alpha)
    acc = np.ones(1, dtype=_U64)
    ops = tower.ops
    for a in pts.tolist():
        nxt = np.zeros(len(acc) + 1, dtype=_U64)
        nxt[1:] = acc
        nxt[:-1] ^= ops.vec_scale(acc, a)  # char 2: -a = a
        acc = nxt
    return Poly(tower, acc)


def poly_mul_mod(f: Poly, g: Poly, modulus: Poly) -> Poly:
    """(f * g) mod modulus."""
    if not modulus:
        raise ZeroDivisionError("zero modulus polynomial")
    ops = f.tower.ops
    prod = ops.poly_mul(f.coeffs, g.coeffs)
    _, rem = ops.poly_divmod(prod, modulus.coeffs)
    return Poly(f.tower, rem)


def interpolate(points, tower: FieldTower | None = None) -> Poly:
    """Unique polynomial of degree < len(points) through (x, y) pairs."""
    pts = list(points)
    if tower is None:
        for x, _ in pts:
            if isinstance(x, FieldElement):
                tower = x.field
                break
        else:
            raise ValueError("cannot infer the field; pass tower=")
    xs = tower.coerce_vector([x for x, _ in pts])
    ys = tower.coerce_vector([y for _, y in pts])
    if len(np.unique(xs)) != len(xs):
        raise ValueError("interpolation points must have distinct x-coordinates")
    return Poly(tower, tower.ops.interpolate(xs, ys))


def euclid_step_sequence(a: Poly, b: Poly, stop_degree: int):
    """Extended Euclid on (a, b), halted at the first remainder of degree
    below stop_degree; returns (u, v, r) with u*a + v*b = r.

    The remainder sequence starts at a itself. b = 0 returns (1, 0, a);
    a zero remainder produced by a division step qualifies (its degree is
    the NEG_INF sentinel), so stop_degree = 0 runs the full gcd chain.
    """
    if a.degree < b.degree:
        raise ValueError("euclid_step_sequence requires deg a >= deg b")
    u, v, r = a.tower.ops.partial_euclid(a.coeffs, b.coeffs, stop_degree)
    return Poly(a.tower, u), Poly(a.tower, v), Poly(a.tower, r)
