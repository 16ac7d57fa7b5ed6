"""GF(2)[X] helpers shared by both kernel backends.

Polynomials over GF(2) are plain ints, bit i holding the coefficient of
X^i. These routines are only used at field-construction time (modulus
validation, log-table generator search), never in hot loops.
"""

from __future__ import annotations

import functools

# Largest extension degree served by log/exp tables; above this the kernels
# multiply by shift-and-xor. 2^16-entry tables are the sweet spot: every
# paper-scale profile tops out at GF(2^16).
TABLE_MAX_M = 16

MAX_DEGREE = 64


def poly2_degree(p: int) -> int:
    return p.bit_length() - 1


def poly2_mod(a: int, m: int) -> int:
    dm = poly2_degree(m)
    da = poly2_degree(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = poly2_degree(a)
    return a


def poly2_gcd(a: int, b: int) -> int:
    while b:
        if poly2_degree(a) < poly2_degree(b):
            a, b = b, a
            continue
        a = poly2_mod(a, b)
        a, b = b, a
    return a


def gf2m_mul(a: int, b: int, modulus: int, m: int) -> int:
    """Field multiply in GF(2^m) by shift-and-xor, reducing as we go."""
    r = 0
    top = 1 << (m - 1)
    mask = (1 << m) - 1
    modlow = modulus & mask
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        carry = a & top
        a = (a << 1) & mask
        if carry:
            a ^= modlow
    return r


def gf2m_pow(a: int, e: int, modulus: int, m: int) -> int:
    r = 1
    a &= (1 << m) - 1
    while e:
        if e & 1:
            r = gf2m_mul(r, a, modulus, m)
        a = gf2m_mul(a, a, modulus, m)
        e >>= 1
    return r


def _x_pow_2k_mod(k: int, f: int) -> int:
    """X^(2^k) mod f by repeated squaring of X."""
    m = poly2_degree(f)
    r = 2  # the polynomial X
    for _ in range(k):
        r = gf2m_mul(r, r, f, m)
    return r


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin irreducibility test for f in GF(2)[X]."""
    m = poly2_degree(f)
    if m <= 0:
        return False
    if m == 1:
        return True
    if not (f & 1):  # X divides f
        return False
    if _x_pow_2k_mod(m, f) != 2:
        return False
    for p in prime_factors(m):
        if poly2_gcd(_x_pow_2k_mod(m // p, f) ^ 2, f) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def least_irreducible(m: int) -> int:
    """Lexicographically least irreducible polynomial of degree m.

    Convention for reproducible key formats: "least" compares the integer
    encoding, so the search walks X^m, X^m + 1, X^m + X, ... upward.
    """
    if not 1 <= m <= MAX_DEGREE:
        raise ValueError(f"degree {m} outside supported range 1..{MAX_DEGREE}")
    c = 1 << m
    while not is_irreducible(c):
        c += 1
    return c


def find_generator(m: int, modulus: int) -> int:
    """Smallest multiplicative generator of GF(2^m)*, for table building."""
    q1 = (1 << m) - 1
    checks = [q1 // p for p in prime_factors(q1)]
    g = 2
    while True:
        if all(gf2m_pow(g, c, modulus, m) != 1 for c in checks):
            return g
        g += 1
