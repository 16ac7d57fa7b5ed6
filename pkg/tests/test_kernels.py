"""Cross-backend kernel equivalence and kernel-level unit checks.

Both lanes (compiled extension and pure Python) must agree operation by
operation; the pure lane is the reference the compiled one is judged
against.
"""

import numpy as np
import pytest

from twistedrs._backend import load_backend
from twistedrs._field_common import find_generator, least_irreducible
from twistedrs.rng import StreamRNG


def _backends():
    lanes = [load_backend("python")]
    try:
        lanes.append(load_backend("compiled"))
    except ImportError:
        pass
    return lanes


LANES = _backends()
DEGREES = [2, 3, 8, 16, 17, 24, 56, 63, 64]


def ops_pair(m):
    mod = least_irreducible(m)
    gen = find_generator(m, mod) if m <= 16 else 0
    return [lane.FieldOps(m, mod, gen) for lane in LANES]


@pytest.mark.parametrize("m", DEGREES)
def test_scalar_ops_agree(m):
    lanes = ops_pair(m)
    rng = StreamRNG(m)
    q = 1 << m
    for _ in range(300):
        x, y = rng.randbelow(q), rng.randbelow(q)
        vals = [ops.mul(x, y) for ops in lanes]
        assert len(set(vals)) == 1
        if x:
            invs = [ops.inv(x) for ops in lanes]
            assert len(set(invs)) == 1
            assert lanes[0].mul(x, invs[0]) == 1
        e = rng.randbelow(1 << 63)
        assert len({ops.pow(x, e) for ops in lanes}) == 1


@pytest.mark.parametrize("m", [8, 16, 56, 64])
def test_bulk_ops_agree(m):
    lanes = ops_pair(m)
    rng = StreamRNG(100 + m)
    q = 1 << m

    def vec(n):
        return np.array([rng.randbelow(q) for _ in range(n)], dtype=np.uint64)

    x, y = vec(33), vec(33)
    ref = lanes[0].vec_mul(x, y)
    for ops in lanes[1:]:
        assert np.array_equal(ops.vec_mul(x, y), ref)

    f, g = vec(14), vec(9)
    f[-1] |= np.uint64(1)
    g[-1] |= np.uint64(1)
    for name in ("poly_mul",):
        ref = getattr(lanes[0], name)(f, g)
        for ops in lanes[1:]:
            assert np.array_equal(getattr(ops, name)(f, g), ref)
    refq, refr = lanes[0].poly_divmod(f, g)
    for ops in lanes[1:]:
        qq, rr = ops.poly_divmod(f, g)
        assert np.array_equal(qq, refq) and np.array_equal(rr, refr)

    # distinct points for interpolation
    pts = set()
    while len(pts) < 20:
        pts.add(rng.randbelow(q))
    xs = np.array(sorted(pts), dtype=np.uint64)
    ys = vec(20)
    ref = lanes[0].interpolate(xs, ys)
    for ops in lanes[1:]:
        assert np.array_equal(ops.interpolate(xs, ys), ref)
    assert np.array_equal(lanes[0].poly_eval_many(ref, xs), ys)

    big, small = vec(26), vec(17)
    big[-1] |= np.uint64(1)
    small[-1] |= np.uint64(1)
    for stop in (0, 4, 11, 18):
        triple_ref = lanes[0].partial_euclid(big, small, stop)
        for ops in lanes[1:]:
            triple = ops.partial_euclid(big, small, stop)
            for a, b in zip(triple, triple_ref):
                assert np.array_equal(a, b)

    M = np.array([[rng.randbelow(q) for _ in range(11)] for _ in range(7)], dtype=np.uint64)
    assert len({ops.mat_rank(M) for ops in lanes}) == 1
    rref_ref = lanes[0].mat_rref(M)
    for ops in lanes[1:]:
        rank, R, piv = ops.mat_rref(M)
        assert rank == rref_ref[0]
        assert np.array_equal(R, rref_ref[1])
        assert piv == rref_ref[2]
    assert len({ops.square_rank(M) for ops in lanes}) == 1
    B = np.array([[rng.randbelow(q) for _ in range(5)] for _ in range(11)], dtype=np.uint64)
    ref = lanes[0].mat_mul(M, B)
    for ops in lanes[1:]:
        assert np.array_equal(ops.mat_mul(M, B), ref)


@pytest.mark.parametrize("m", [8, 16])
def test_euclid_identity_and_stop(m):
    for ops in ops_pair(m):
        rng = StreamRNG(17)
        q = 1 << m
        a = np.array([rng.randbelow(q) for _ in range(21)], dtype=np.uint64)
        b = np.array([rng.randbelow(q) for _ in range(15)], dtype=np.uint64)
        a[-1] |= np.uint64(1)
        b[-1] |= np.uint64(1)
        for stop in (0, 3, 9, 14, 25):
            u, v, r = ops.partial_euclid(a, b, stop)
            lhs = ops.poly_mul(u, a)
            rhs = ops.poly_mul(v, b)
            n = max(len(lhs), len(rhs), len(r), 1)
            acc = np.zeros(n, dtype=np.uint64)
            acc[: len(lhs)] ^= lhs
            acc[: len(rhs)] ^= rhs
            acc[: len(r)] ^= r
            assert not acc.any(), f"u*a + v*b != r at stop={stop}"
            assert len(r) - 1 < stop or stop > a.size
        # b = 0 degenerates to (1, 0, a)
        u, v, r = ops.partial_euclid(a, np.zeros(0, dtype=np.uint64), 3)
        assert list(u) == [1] and len(v) == 0 and np.array_equal(r, a)


def test_rank_engines_match_each_other():
    rng = StreamRNG(23)
    for ops in ops_pair(8):
        for trial in range(20):
            rows = 3 + rng.randbelow(6)
            cols = 4 + rng.randbelow(8)
            M = np.array(
                [[rng.randbelow(256) for _ in range(cols)] for _ in range(rows)],
                dtype=np.uint64,
            )
            # rank via rref equals incremental rank
            assert ops.mat_rank(M) == ops.mat_rref(M)[0]
            # square_rank equals rank of the materialized product matrix
            prods = [
                ops.vec_mul(M[i], M[j])
                for i in range(rows)
                for j in range(i, rows)
            ]
            assert ops.square_rank(M) == ops.mat_rank(np.array(prods))


def test_zero_divisors_raise():
    for ops in ops_pair(8):
        with pytest.raises(ZeroDivisionError):
            ops.inv(0)
        with pytest.raises(ZeroDivisionError):
            ops.poly_divmod(
                np.ones(3, dtype=np.uint64), np.zeros(0, dtype=np.uint64)
            )
        with pytest.raises(ZeroDivisionError):
            ops.interpolate(
                np.array([1, 1], dtype=np.uint64), np.array([0, 1], dtype=np.uint64)
            )
