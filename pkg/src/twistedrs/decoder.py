"""Decoding: classical RS unique decoding and the brute-force twist decoder.

The RS half lives on the interpolation + key-equation route: interpolate
the received word, run the partial extended Euclidean algorithm against
the vanishing polynomial of the evaluation points with stop degree
(n+k)/2, and accept only on exact division, a degree bound, and a final
distance check.

The twisted decoder guesses the hook coefficients (g_1, ..., g_ell),
strips the guessed twist contribution from the received word, RS-decodes
the remainder, and sifts: a candidate message is kept only when its hook
coefficients reproduce the guesses. The distance check is performed
against the corrected word, which equals the distance from the rebuilt
twisted codeword to the original word (the correction shifts both sides
by the same vector), so acceptance bounds the true twisted distance.
Inside the unique radius at most one guess survives, making guess order
behaviorally irrelevant; the lexicographic order used here is purely for
reproducibility. Cost is one RS round per guess and q^ell rounds worst
case, so a budget guard refuses astronomical guess spaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .codes import TwistedCodeParams, assert_valid
from .errors import BudgetExceededError, DecodingIntegrityError, ParameterError
from .gf import FieldTower
from .poly import Poly, vanishing_poly

_U64 = np.uint64

DEFAULT_BUDGET = 1 << 24


@dataclass
class DecodeResult:
    """Successful twisted decode: message, codeword, and loop telemetry."""

    message: np.ndarray
    codeword: np.ndarray
    error_positions: tuple[int, ...]
    guesses: tuple[int, ...]
    rounds: int
    sift_rejections: int


def _gao_core(tower, M, R, alpha, target, k: int, tau: int):
    """One key-equation round against interpolation R of `target`.

    Returns (message_coeffs, codeword) or None.
    """
    ops = tower.ops
    if not np.any(R):
        # the corrected word is identically zero: candidate message 0
        if int(np.count_nonzero(target)) > tau:
            return None
        return np.zeros(k, dtype=_U64), np.zeros(len(alpha), dtype=_U64)
    stop = (len(alpha) + k + 1) // 2  # first remainder of degree < (n+k)/2
    _, v, r = ops.partial_euclid(M, R, stop)
    if len(v) == 0:
        return None
    f, rem = ops.poly_divmod(r, v)
    if len(rem):
        return None
    if len(f) > k:  # degree >= k
        return None
    cw = ops.poly_eval_many(f, alpha)
    if int(np.count_nonzero(cw != target)) > tau:
        return None
    out = np.zeros(k, dtype=_U64)
    out[: len(f)] = f
    return out, cw


def rs_decode(received, alpha, k: int, tau: int, tower: FieldTower) -> Poly | None:
    """Unique-decode `received` as an [n, k] RS word over `alpha`.

    Returns the message polynomial when some degree-<k polynomial evaluates
    within Hamming distance tau of the received word (unique for
    tau <= (n-k)/2), else None. Failure is a value, not an exception.
    """
    rec = tower.coerce_vector(received)
    pts = tower.coerce_vector(alpha)
    n = len(pts)
    if len(rec) != n:
        raise ValueError("received word and evaluation points disagree in length")
    if len(np.unique(pts)) != n:
        raise ValueError("evaluation points must be distinct")
    if not 0 <= tau <= (n - k) // 2:
        raise ParameterError(f"tau = {tau} above the unique radius {(n - k) // 2}")
    M = vanishing_poly(tower, pts).coeffs
    R = tower.ops.interpolate(pts, rec)
    hit = _gao_core(tower, M, R, pts, rec, k, tau)
    return None if hit is None else Poly(tower, hit[0])


def twisted_decode(
    received,
    p: TwistedCodeParams,
    tau: int | None = None,
    budget: int = DEFAULT_BUDGET,
    exhaustive: bool = False,
    telemetry: dict | None = None,
) -> DecodeResult | None:
    """Brute-force twist decoder.

    Iterates hook-coefficient guesses in lexicographic bit-pattern order
    (first coordinate most significant) and runs one RS round per guess.
    By default the first accepted candidate wins; `exhaustive` scans the
    whole guess space and raises DecodingIntegrityError on a second
    acceptance, which cannot happen within the unique radius. A dict
    passed as `telemetry` receives the round and sift counters even when
    decoding fails (failure scans all q^ell guesses).

    With tau pushed between half the twisted code's true minimum distance
    and (n-k)/2, which candidate is found first is undefined behavior of
    the radius contract, not of this function.
    """
    assert_valid(p)
    tower = p.tower
    n, k, q = p.n, p.k, tower.order
    rec = tower.coerce_vector(received)
    if len(rec) != n:
        raise ValueError("received word has wrong length")
    if tau is None:
        tau = (n - k) // 2
    if not 0 <= tau <= (n - k) // 2:
        raise ParameterError(f"tau = {tau} above the unique radius {(n - k) // 2}")
    if q**p.ell > budget:
        raise BudgetExceededError(
            f"guess space q^ell = 2^{tower.top_degree * p.ell} exceeds budget {budget}"
        )
    ops = tower.ops
    pts = p.alpha_vector()
    M = vanishing_poly(tower, pts).coeffs
    R0 = ops.interpolate(pts, rec)

    twist_degrees = [k - 1 + t for t in p.twists]
    buflen = max([len(R0), 1] + [d + 1 for d in twist_degrees])
    R = np.zeros(buflen, dtype=_U64)
    R[: len(R0)] = R0
    base_at = [int(R[d]) for d in twist_degrees]
    # ev(X^(k-1+t_i)) on the evaluation points, for correcting the word
    monomial_rows = [
        ops.poly_eval_many(_monomial(d), pts) for d in twist_degrees
    ]

    accepted: DecodeResult | None = None
    rounds = 0
    sift_rejections = 0
    for guess in itertools.product(range(q), repeat=p.ell):
        corrections = [ops.mul(g, e) for g, e in zip(guess, p.etas)]
        corrected = rec
        for d, base, c, row in zip(twist_degrees, base_at, corrections, monomial_rows):
            R[d] = base ^ c
            if c:
                corrected = corrected ^ ops.vec_scale(row, c)
        rounds += 1
        hit = _gao_core(tower, M, R, pts, corrected, k, tau)
        if hit is None:
            continue
        f, cw_rs = hit
        if any(int(f[h]) != g for h, g in zip(p.hooks, guess)):
            sift_rejections += 1
            continue
        # shift the RS codeword back by the twist contribution
        codeword = cw_rs ^ corrected ^ rec
        errs = tuple(int(i) for i in np.nonzero(cw_rs != corrected)[0])
        result = DecodeResult(
            message=f,
            codeword=codeword,
            error_positions=errs,
            guesses=tuple(int(g) for g in guess),
            rounds=rounds,
            sift_rejections=sift_rejections,
        )
        if not exhaustive:
            _note(telemetry, rounds, sift_rejections)
            return result
        if accepted is not None:
            raise DecodingIntegrityError(
                "two candidates accepted inside the unique radius: "
                f"guesses {accepted.guesses} and {result.guesses}"
            )
        accepted = result
    _note(telemetry, rounds, sift_rejections)
    if accepted is not None:
        accepted.rounds = rounds
        accepted.sift_rejections = sift_rejections
        return accepted
    return None


def _note(telemetry: dict | None, rounds: int, sift_rejections: int) -> None:
    if telemetry is not None:
        telemetry["rounds"] = rounds
        telemetry["sift_rejections"] = sift_rejections


def _monomial(degree: int) -> np.ndarray:
    arr = np.zeros(degree + 1, dtype=_U64)
    arr[degree] = 1
    return arr
