"""RS and twisted decoding: round trips, oracle agreement, guess-loop
contracts."""

import itertools

import numpy as np
import pytest

from twistedrs.codes import encode, random_tower_params, rs_params
from twistedrs.decoder import rs_decode, twisted_decode
from twistedrs.errors import BudgetExceededError, ParameterError
from twistedrs.gf import FieldTower
from twistedrs.poly import Poly, eval_vector
from twistedrs.rng import StreamRNG

from conftest import add_errors, rand_vec, weight


@pytest.fixture(scope="module")
def rs73(tower64):
    """(7, 3) RS over the GF(8) subfield points, with its full codebook."""
    alpha = [v for v in range(1, 64) if FieldTower(3, 1).is_in_subfield(v, 0)]
    tower = FieldTower(3, 1)
    codebook = {}
    base = sorted(v for v in range(64) if tower.is_in_subfield(v, 0))
    for msg in itertools.product(base, repeat=3):
        f = Poly(tower, list(msg))
        codebook[msg] = eval_vector(f, alpha)
    return tower, alpha, codebook


def nearest(codebook, word):
    best, bestd = None, 99
    for msg, cw in codebook.items():
        d = weight(cw, word)
        if d < bestd:
            best, bestd = msg, d
    return best, bestd


def test_rs_zero_errors(tower8):
    rng = StreamRNG(1)
    alpha = list(range(1, 16))
    for _ in range(20):
        msg = rand_vec(tower8, rng, 5)
        cw = eval_vector(Poly(tower8, msg), alpha)
        f = rs_decode(cw, alpha, 5, 5, tower8)
        assert f is not None
        assert np.array_equal(
            np.array([f.coefficient(i) for i in range(5)], dtype=np.uint64), msg
        )


def test_rs_agrees_with_nearest_codeword_oracle(rs73):
    tower, alpha, codebook = rs73
    rng = StreamRNG(2)
    msgs = list(codebook)
    for trial in range(60):
        msg = msgs[rng.randbelow(len(msgs))]
        word = add_errors(rng, codebook[msg].copy(), rng.randbelow(3), tower.order)
        oracle_msg, oracle_d = nearest(codebook, word)
        got = rs_decode(word, alpha, 3, 2, tower)
        if oracle_d <= 2:
            assert got is not None
            assert tuple(got.coefficient(i) for i in range(3)) == oracle_msg
        elif got is not None:
            coeffs = tuple(got.coefficient(i) for i in range(3))
            assert weight(codebook[coeffs], word) <= 2


def test_rs_failure_beyond_covering_radius(rs73):
    tower, alpha, codebook = rs73
    rng = StreamRNG(3)
    # hunt for a word at distance > 2 from every codeword
    for _ in range(3000):
        word = rand_vec(tower, rng, 7)
        _, d = nearest(codebook, word)
        if d > 2:
            assert rs_decode(word, alpha, 3, 2, tower) is None
            break
    else:
        pytest.fail("no deep hole found in (7,3) RS over GF(8)")


def test_rs_tau_contract(tower8):
    alpha = list(range(1, 16))
    with pytest.raises(ParameterError, match="unique radius"):
        rs_decode(np.zeros(15, dtype=np.uint64), alpha, 5, 6, tower8)
    with pytest.raises(ValueError, match="distinct"):
        rs_decode(np.zeros(15, dtype=np.uint64), [1] * 15, 5, 5, tower8)


def test_rs_all_zero_word(tower8):
    alpha = list(range(1, 16))
    f = rs_decode(np.zeros(15, dtype=np.uint64), alpha, 5, 5, tower8)
    assert f is not None and not f
    # zero codeword plus tau errors still decodes to zero
    rng = StreamRNG(4)
    word = add_errors(rng, np.zeros(15, dtype=np.uint64), 5, tower8.order)
    f = rs_decode(word, alpha, 5, 5, tower8)
    assert f is not None and not f


@pytest.fixture(scope="module")
def toy_code():
    """(15, 5, ell=1) over the GF(2^8)/GF(2^4) tower."""
    return random_tower_params(15, 5, 1, 16, StreamRNG(40))


def test_twisted_zero_errors_returns_hooks(toy_code):
    p = toy_code
    rng = StreamRNG(5)
    msg = rand_vec(p.tower, rng, 5)
    res = twisted_decode(encode(p, msg), p, tau=0)
    assert res is not None
    assert np.array_equal(res.message, msg)
    assert res.guesses == tuple(int(msg[h]) for h in p.hooks)
    assert res.error_positions == ()


def test_twisted_round_trips(toy_code):
    p = toy_code
    ok = 0
    for trial in range(100):
        rng = StreamRNG(3000 + trial)
        msg = rand_vec(p.tower, rng, 5)
        cw = encode(p, msg)
        word = add_errors(rng, cw, 5, p.tower.order)
        res = twisted_decode(word, p, tau=5)
        assert res is not None, trial
        assert np.array_equal(res.message, msg)
        assert np.array_equal(res.codeword, cw)
        assert set(res.error_positions) == set(np.nonzero(word != cw)[0])
        assert res.rounds <= 256
        ok += 1
    assert ok == 100


def test_twisted_failure_scans_everything(toy_code):
    p = toy_code
    rng = StreamRNG(6)
    # distance > tau from the code with overwhelming probability
    word = rand_vec(p.tower, rng, 15)
    telemetry = {}
    res = twisted_decode(word, p, tau=2, telemetry=telemetry)
    if res is None:
        assert telemetry["rounds"] == p.tower.order ** p.ell


def test_sifting_fires():
    # needs a dense profile: (7, 3) over q = 64 puts random corrected words
    # within the RS radius often enough for wrong guesses to survive the
    # key equation and reach the sift
    total_sifts = 0
    for trial in range(50):
        rng = StreamRNG(7000 + trial)
        p = random_tower_params(7, 3, 1, 8, rng)
        msg = rand_vec(p.tower, rng, 3)
        word = add_errors(rng, encode(p, msg), 2, p.tower.order)
        telemetry = {}
        res = twisted_decode(word, p, tau=2, exhaustive=True, telemetry=telemetry)
        assert res is not None and np.array_equal(res.message, msg)
        total_sifts += telemetry["sift_rejections"]
    assert total_sifts > 0, "sifting never needed across 50 trials"


def test_early_exit_equals_exhaustive():
    # 50 seeded instances over a q = 64 top field: (7, 3) with one twist
    hits = 0
    for trial in range(50):
        rng = StreamRNG(9000 + trial)
        p = random_tower_params(7, 3, 1, 8, rng)
        msg = rand_vec(p.tower, rng, 3)
        word = add_errors(rng, encode(p, msg), 2, p.tower.order)
        first = twisted_decode(word, p, tau=2)
        full = twisted_decode(word, p, tau=2, exhaustive=True)
        assert (first is None) == (full is None)
        if first is not None:
            assert np.array_equal(first.message, full.message)
            assert full.rounds == 64
            hits += 1
    assert hits == 50


def test_budget_guard(toy_code):
    with pytest.raises(BudgetExceededError):
        twisted_decode(np.zeros(15, dtype=np.uint64), toy_code, budget=100)


def test_twisted_tau_contract(toy_code):
    with pytest.raises(ParameterError, match="unique radius"):
        twisted_decode(np.zeros(15, dtype=np.uint64), toy_code, tau=6)


def test_two_twist_round_trip():
    # ell = 2 stays feasible when q is small: GF(2^8) over GF(4), n = 4
    rng = StreamRNG(10)
    p = random_tower_params(4, 2, 2, 4, rng, allow_zero_point=True)
    assert p.tower.order == 256
    for trial in range(5):
        r2 = StreamRNG(11_000 + trial)
        msg = rand_vec(p.tower, r2, 2)
        word = add_errors(r2, encode(p, msg), 1, 256)
        telemetry = {}
        res = twisted_decode(word, p, tau=1, telemetry=telemetry)
        assert res is not None and np.array_equal(res.message, msg)
        assert telemetry["rounds"] <= 256**2


def test_zero_twists_is_plain_rs(tower8):
    p = rs_params(tower8, 15, 5, range(1, 16))
    rng = StreamRNG(8)
    msg = rand_vec(tower8, rng, 5)
    word = add_errors(rng, encode(p, msg), 5, tower8.order)
    res = twisted_decode(word, p)
    assert res is not None
    assert res.rounds == 1 and res.guesses == ()
    assert np.array_equal(res.message, msg)
