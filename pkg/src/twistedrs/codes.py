"""Construction and validation of multi-twisted Reed-Solomon codes.

A code is described by (n, k, twists t, hooks h, coefficients eta,
evaluation points alpha) over a field tower. Message polynomials are the
usual degree-<k polynomials, except that for each twist index i the hook
coefficient f_{h_i} also feeds a monomial of degree k-1+t_i scaled by
eta_i. Placing each eta_i in successive subfield differences of the tower
certifies the code MDS; evaluation points forming a multiplicative group
give an explicit twisted dual.

The crypto-grade parameter family (`family_f_params`) derives (r, t, h)
from (n, k, ell) and samples eta/alpha; `random_tower_params` samples
arbitrary tower-compliant codes for tests and toy profiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._field_common import prime_factors
from .errors import ParameterError, SizeGuardError
from .gf import FieldTower
from .poly import Poly
from .rng import StreamRNG

_U64 = np.uint64

GENERATOR = "generator"
SYSTEMATIC = "systematic_generator"
PARITY = "parity_check"


@dataclass(frozen=True)
class TwistedCodeParams:
    """Full (secret) description of a twisted RS code."""

    tower: FieldTower
    n: int
    k: int
    twists: tuple[int, ...]
    hooks: tuple[int, ...]
    etas: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.twists)

    def alpha_vector(self) -> np.ndarray:
        return np.array(self.alpha, dtype=_U64)

    def __repr__(self):
        return (
            f"TwistedCodeParams(n={self.n}, k={self.k}, ell={self.ell}, "
            f"t={self.twists}, h={self.hooks}, GF(2^{self.tower.top_degree}))"
        )


@dataclass(frozen=True)
class CodeMatrix:
    """Dense matrix over the top field with a role tag."""

    tower: FieldTower
    entries: np.ndarray  # 2-D uint64, C-contiguous
    role: str = GENERATOR

    def __post_init__(self):
        arr = np.ascontiguousarray(self.entries, dtype=_U64)
        object.__setattr__(self, "entries", arr)
        if arr.ndim != 2:
            raise ValueError("CodeMatrix entries must be 2-D")

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def rank(self) -> int:
        return self.tower.ops.mat_rank(self.entries)

    def row_space_contains(self, vectors: np.ndarray) -> bool:
        stacked = np.vstack([self.entries, np.atleast_2d(vectors)])
        return self.tower.ops.mat_rank(stacked) == self.rank()


# ---------------------------------------------------------------------------
# validation


def validate_params(p: TwistedCodeParams) -> list[str]:
    """Every violated construction rule, as strings; empty means ok."""
    bad = []
    n, k = p.n, p.k
    q = p.tower.order
    if not 0 < k < n:
        bad.append(f"need 0 < k < n, got (n, k) = ({n}, {k})")
    if not (len(p.twists) == len(p.hooks) == len(p.etas)):
        bad.append("twists, hooks and coefficients must have equal length")
    if len(set(p.twists)) != len(p.twists):
        bad.append("twists must be distinct")
    for t in p.twists:
        if not 1 <= t <= n - k:
            bad.append(f"twist {t} out of range 1..{n - k}")
    if len(set(p.hooks)) != len(p.hooks):
        bad.append("hooks must be distinct")
    for h in p.hooks:
        if not 0 <= h < k:
            bad.append(f"hook {h} out of range 0..{k - 1}")
    for e in p.etas:
        if e == 0:
            bad.append("twist coefficients must be nonzero")
        elif not 0 < e < q:
            bad.append(f"coefficient 0x{e:x} outside the field")
    if len(p.alpha) != n:
        bad.append(f"need {n} evaluation points, got {len(p.alpha)}")
    if len(set(p.alpha)) != len(p.alpha):
        bad.append("evaluation points must be distinct")
    for a in p.alpha:
        if not 0 <= a < q:
            bad.append(f"evaluation point 0x{a:x} outside the field")
    if p.twists and k - 1 + max(p.twists) >= n:
        # unreachable while twists stay <= n-k; kept as a belt for replace()
        bad.append("evaluation map not injective: k-1+max(t) >= n")
    return bad


def assert_valid(p: TwistedCodeParams) -> None:
    bad = validate_params(p)
    if bad:
        raise ParameterError("; ".join(bad))


# ---------------------------------------------------------------------------
# the crypto parameter family


def family_f_checks(n: int, k: int, ell: int, q0: int, variant: str) -> list[tuple[str, bool, str]]:
    """All admission inequalities for the parameter family, evaluated
    exactly (no floats). Returns (name, ok, detail) triples."""
    checks = []
    m0 = q0.bit_length() - 1
    is_pow2 = q0 >= 4 and q0 == 1 << m0
    checks.append(("q0-power-of-two", is_pow2, f"q0 = {q0} must be 2^m0, m0 >= 2"))
    checks.append(("length-fits-base", n <= q0 - 1, f"n = {n} <= q0 - 1 = {q0 - 1}"))
    # 2*sqrt(n) + 6 < k  <=>  k > 6 and 4n < (k-6)^2
    ok_klo = k > 6 and 4 * n < (k - 6) * (k - 6)
    checks.append(("dimension-lower", ok_klo, f"2*sqrt({n}) + 6 < {k}"))
    checks.append(("dimension-upper", 2 * (k + 2) <= n, f"{k} <= {n}/2 - 2"))
    # (n+1)/(k - sqrt(n)) - 2 < ell  <=>  (ell+2)*k - (n+1) > (ell+2)*sqrt(n)
    rhs = (ell + 2) * k - (n + 1)
    ok_llo = rhs > 0 and (ell + 2) * (ell + 2) * n < rhs * rhs
    checks.append(("twist-count-lower", ok_llo, f"(n+1)/(k - sqrt(n)) - 2 < ell = {ell}"))
    ok_lhi = ell <= k and k * (ell + 2) < 2 * n and (ell + 4) * (ell + 4) < n
    checks.append(
        ("twist-count-upper", ok_lhi, f"ell = {ell} < min(k+1, 2n/k - 2, sqrt(n) - 4)")
    )
    if variant == "Ftilde":
        checks.append(
            ("group-order-divides", n >= 1 and (q0 - 1) % n == 0, f"n = {n} divides q0 - 1 = {q0 - 1}")
        )
    if is_pow2:
        m_top = m0 << ell
        checks.append(
            ("top-field-supported", 2 <= m_top <= 64, f"m0 * 2^ell = {m_top} <= 64")
        )
    return checks


def derive_family_structure(n: int, k: int, ell: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """(r, t, h) from the family's closed formulas."""
    r = -((n + 1) // -(ell + 2)) + 2  # ceil((n+1)/(ell+2)) + 2
    twists = tuple((i + 1) * (r - 2) - k + 2 for i in range(1, ell + 1))
    hooks = tuple(r - 1 + i for i in range(1, ell + 1))
    return r, twists, hooks


def family_f_params(
    n: int,
    k: int,
    ell: int,
    q0: int,
    variant: str = "F",
    rng: StreamRNG | None = None,
    seed: int | bytes | None = None,
) -> TwistedCodeParams:
    """Sample a code from the structured family (variant "F") or its
    multiplicative-group subfamily (variant "Ftilde")."""
    if variant not in ("F", "Ftilde"):
        raise ParameterError(f"unknown family variant {variant!r}")
    failed = [c for c in family_f_checks(n, k, ell, q0, variant) if not c[1]]
    if failed:
        raise ParameterError(
            "parameter rejection: "
            + "; ".join(f"{name} ({detail})" for name, _, detail in failed)
        )
    if rng is None:
        rng = StreamRNG(0 if seed is None else seed)
    m0 = q0.bit_length() - 1
    tower = FieldTower(m0, ell)
    _, twists, hooks = derive_family_structure(n, k, ell)
    etas = tuple(tower.sample_eta(i, rng).value for i in range(1, ell + 1))
    if variant == "F":
        alpha = _sample_distinct_base_points(tower, n, rng)
    else:
        alpha = _sample_group_points(tower, n, rng)
    p = TwistedCodeParams(tower, n, k, twists, hooks, etas, alpha)
    assert_valid(p)
    return p


def _sample_distinct_base_points(tower: FieldTower, n: int, rng: StreamRNG) -> tuple[int, ...]:
    """n distinct nonzero elements of the bottom subfield, in sampled order."""
    if n > tower.base_order - 1:
        raise ParameterError(f"cannot pick {n} distinct nonzero base-field points")
    seen: dict[int, None] = {}
    while len(seen) < n:
        seen.setdefault(tower.sample_base_element(rng, nonzero=True), None)
    return tuple(seen.keys())


def _sample_group_points(tower: FieldTower, n: int, rng: StreamRNG) -> tuple[int, ...]:
    """The order-n multiplicative subgroup, walked from a random generator
    with a random rotation. The stored order is part of the secret."""
    q1 = tower.order - 1
    if q1 % n:
        raise ParameterError(f"no multiplicative subgroup of order {n}")
    cof = q1 // n
    ops = tower.ops
    crit = [n // pr for pr in prime_factors(n)] if n > 1 else []
    while True:
        x = rng.randbelow(q1) + 1
        z = ops.pow(x, cof)
        if z != 1 and all(ops.pow(z, c) != 1 for c in crit):
            break
        if n == 1 and z == 1:
            break
    start = ops.pow(z, rng.randbelow(n))
    out = []
    cur = start
    for _ in range(n):
        out.append(cur)
        cur = ops.mul(cur, z)
    return tuple(out)


def random_tower_params(
    n: int,
    k: int,
    ell: int,
    q0: int,
    rng: StreamRNG,
    group_alpha: bool = False,
    allow_zero_point: bool = False,
) -> TwistedCodeParams:
    """Random MDS-certified twisted code outside the structured family.

    Samples distinct twists/hooks uniformly and coefficients from the
    subfield differences, so the tower certificate holds by construction.
    Used by tests and by the insecure "toy" keygen profile.
    """
    m0 = q0.bit_length() - 1
    if q0 != 1 << m0 or m0 < 1:
        raise ParameterError(f"q0 = {q0} is not a supported power of two")
    if not 0 < k < n:
        raise ParameterError(f"need 0 < k < n, got ({n}, {k})")
    if n > (q0 if allow_zero_point else q0 - 1):
        raise ParameterError(f"base field too small for n = {n} distinct points")
    if not 0 <= ell <= min(n - k, k):
        raise ParameterError(f"cannot place {ell} distinct twists for (n, k) = ({n}, {k})")
    tower = FieldTower(m0, ell)
    twists = tuple(sorted(1 + i for i in rng.sample_positions(n - k, ell)))
    hooks = tuple(sorted(rng.sample_positions(k, ell)))
    etas = tuple(tower.sample_eta(i, rng).value for i in range(1, ell + 1))
    if group_alpha:
        alpha = _sample_group_points(tower, n, rng)
    else:
        seen: dict[int, None] = {}
        while len(seen) < n:
            v = tower.sample_base_element(rng, nonzero=not allow_zero_point)
            seen.setdefault(v, None)
        alpha = tuple(seen.keys())
    p = TwistedCodeParams(tower, n, k, twists, hooks, etas, alpha)
    assert_valid(p)
    return p


# ---------------------------------------------------------------------------
# MDS certificates


def mds_tower_certificate(p: TwistedCodeParams) -> bool:
    """True iff the subfield-chain sufficient condition holds: all alpha in
    the bottom subfield with n <= q0, and each eta_i in F_{s_i} \\ F_{s_i-1}.
    True certifies the code MDS."""
    tower = p.tower
    if p.n > tower.base_order:
        return False
    if any(not tower.is_in_subfield(a, 0) for a in p.alpha):
        return False
    for i, e in enumerate(p.etas, start=1):
        if not tower.is_in_subfield(e, i):
            return False
        if tower.is_in_subfield(e, i - 1):
            return False
    return True


def mds_brute_check(G: CodeMatrix, size_guard: int = 30) -> bool:
    """Exhaustive MDS oracle: every k x k minor nonzero.

    Refuses above the size guard (the minor count explodes); use
    mds_tower_certificate for real parameters.
    """
    import itertools

    k, n = G.rows, G.cols
    if n > size_guard:
        raise SizeGuardError(
            f"n = {n} exceeds the brute-force guard {size_guard}; "
            "use mds_tower_certificate instead"
        )
    if math.comb(n, k) > 2_000_000:
        raise SizeGuardError("too many minors; use mds_tower_certificate instead")
    ops = G.tower.ops
    ent = G.entries
    for cols in itertools.combinations(range(n), k):
        sub = np.ascontiguousarray(ent[:, cols])
        if ops.mat_rank(sub) != k:
            return False
    return True


# ---------------------------------------------------------------------------
# matrices and encoding


def _power_table(p: TwistedCodeParams, max_degree: int) -> np.ndarray:
    """Rows j = 0..max_degree of alpha_i^j."""
    ops = p.tower.ops
    alpha = p.alpha_vector()
    table = np.zeros((max_degree + 1, p.n), dtype=_U64)
    table[0, :] = 1
    for j in range(1, max_degree + 1):
        table[j] = ops.vec_mul(table[j - 1], alpha)
    return table


def generator_matrix(p: TwistedCodeParams) -> CodeMatrix:
    """Monomial-like-basis generator: row j is ev(x^j), except hook rows
    h_i, which are ev(x^h_i + eta_i x^(k-1+t_i))."""
    assert_valid(p)
    ops = p.tower.ops
    top = p.k - 1 + (max(p.twists) if p.twists else 0)
    table = _power_table(p, top)
    G = table[: p.k].copy()
    for t, h, e in zip(p.twists, p.hooks, p.etas):
        G[h] ^= ops.vec_scale(table[p.k - 1 + t], e)
    return CodeMatrix(p.tower, G, GENERATOR)


def twisted_message_poly(p: TwistedCodeParams, message) -> Poly:
    """The evaluation polynomial determined by a length-k message."""
    msg = p.tower.coerce_vector(message)
    if len(msg) != p.k:
        raise ValueError(f"message length {len(msg)} != k = {p.k}")
    top = p.k - 1 + (max(p.twists) if p.twists else 0)
    coeffs = np.zeros(top + 1, dtype=_U64)
    coeffs[: p.k] = msg
    ops = p.tower.ops
    for t, h, e in zip(p.twists, p.hooks, p.etas):
        coeffs[p.k - 1 + t] ^= ops.mul(int(msg[h]), e)
    return Poly(p.tower, coeffs)


def encode(p: TwistedCodeParams, message) -> np.ndarray:
    """Codeword for a length-k message (evaluation of the twisted
    polynomial; identical to message @ generator_matrix)."""
    f = twisted_message_poly(p, message)
    return p.tower.ops.poly_eval_many(f.coeffs, p.alpha_vector())


def systematic_form(G: CodeMatrix) -> CodeMatrix:
    """Row-reduce to [I | A], pivoting strictly on the first k columns.

    Raises ParameterError when the left k x k block is singular (a
    non-MDS instance, or columns ordered so the information set moves).
    """
    rank, R, pivots = G.tower.ops.mat_rref(G.entries)
    k = G.rows
    if rank != k or pivots != list(range(k)):
        raise ParameterError(
            "left k x k block is singular; non-MDS instance or bad column order"
        )
    return CodeMatrix(G.tower, R, SYSTEMATIC)


def systematic_transform(G: CodeMatrix) -> np.ndarray:
    """The k x k left block B of G: maps monomial-like-basis message
    coordinates to systematic (public) coordinates via m_pub = m_sec @ B."""
    return np.ascontiguousarray(G.entries[:, : G.rows])


def vec_mat(tower: FieldTower, v: np.ndarray, M: np.ndarray) -> np.ndarray:
    """v @ M over the field (v length = rows of M)."""
    ops = tower.ops
    acc = np.zeros(M.shape[1], dtype=_U64)
    for i, c in enumerate(v.tolist()):
        if c:
            acc ^= ops.vec_scale(M[i], c)
    return acc


# ---------------------------------------------------------------------------
# duality over multiplicative evaluation groups


def is_multiplicative_group(tower: FieldTower, alpha) -> bool:
    """n distinct points closed under multiplication. Distinct points all
    satisfying a^n = 1 are exactly the order-n root subgroup, so closure
    reduces to the power test."""
    pts = [int(a) for a in alpha]
    n = len(pts)
    if len(set(pts)) != n or 0 in pts:
        return False
    ops = tower.ops
    return all(ops.pow(a, n) == 1 for a in pts)


def int_in_field(tower: FieldTower, n: int) -> int:
    """Image of the integer n under repeated addition of 1 (char 2: parity)."""
    return n % tower.characteristic


def dual_params(p: TwistedCodeParams) -> tuple[TwistedCodeParams, np.ndarray]:
    """Parameters of the dual code and the column multipliers realizing it.

    For alpha a multiplicative group, the dual of (n, k, t, h, eta) is the
    twisted code (n, n-k, k-h, n-k-t, -eta) up to column multipliers
    alpha_i / n. Each twist maps one-for-one: (t_i, h_i, eta_i) becomes
    (k-h_i, n-k-t_i, -eta_i), and -eta = eta in characteristic 2.
    """
    assert_valid(p)
    tower = p.tower
    if not is_multiplicative_group(tower, p.alpha):
        raise ParameterError("dual_params requires evaluation points forming a multiplicative group")
    n_img = int_in_field(tower, p.n)
    if n_img == 0:
        raise ParameterError("n maps to zero in the field; column multipliers undefined")
    dual = TwistedCodeParams(
        tower=tower,
        n=p.n,
        k=p.n - p.k,
        twists=tuple(p.k - h for h in p.hooks),
        hooks=tuple(p.n - p.k - t for t in p.twists),
        etas=p.etas,  # -eta, and char 2 makes negation the identity
        alpha=p.alpha,
    )
    assert_valid(dual)
    inv_n = tower.ops.inv(n_img)
    multipliers = tower.ops.vec_scale(p.alpha_vector(), inv_n)
    return dual, multipliers


def dual_parity_check(p: TwistedCodeParams, verify: bool = True) -> CodeMatrix:
    """Parity-check matrix from the explicit dual: the dual code's
    generator with columns scaled by the multipliers."""
    dual, multipliers = dual_params(p)
    Gd = generator_matrix(dual)
    ops = p.tower.ops
    H = np.vstack([ops.vec_mul(row, multipliers) for row in Gd.entries])
    Hm = CodeMatrix(p.tower, H, PARITY)
    if verify:
        G = generator_matrix(p)
        prod = ops.mat_mul(G.entries, np.ascontiguousarray(H.T))
        if prod.any():
            raise ArithmeticError("dual construction failed: G @ H^T != 0")
    return Hm


# ---------------------------------------------------------------------------
# shortening and random codes


def shorten(G: CodeMatrix, positions) -> CodeMatrix:
    """Generator of the code restricted to words vanishing on `positions`,
    with those coordinates deleted."""
    pos = sorted(set(int(i) for i in positions))
    if any(not 0 <= i < G.cols for i in pos):
        raise ValueError("shortening position out of range")
    if not pos:
        return G
    others = [c for c in range(G.cols) if c not in pos]
    perm = pos + others
    rank, R, pivots = G.tower.ops.mat_rref(np.ascontiguousarray(G.entries[:, perm]))
    keep = [i for i, pc in enumerate(pivots) if pc >= len(pos)]
    if not keep:
        raise ParameterError("shortening leaves an empty code")
    body = np.ascontiguousarray(R[keep][:, len(pos):])
    return CodeMatrix(G.tower, body, G.role)


def random_linear_code(tower: FieldTower, n: int, k: int, rng: StreamRNG) -> CodeMatrix:
    """Uniform k x n matrix, resampled until full rank."""
    while True:
        ent = np.array(
            [[rng.randbelow(tower.order) for _ in range(n)] for _ in range(k)],
            dtype=_U64,
        )
        if tower.ops.mat_rank(ent) == k:
            return CodeMatrix(tower, ent, GENERATOR)


def rs_params(tower: FieldTower, n: int, k: int, alpha) -> TwistedCodeParams:
    """Plain RS code as the degenerate zero-twist case."""
    p = TwistedCodeParams(tower, n, k, (), (), (), tuple(int(a) for a in alpha))
    assert_valid(p)
    return p


# ---------------------------------------------------------------------------
# parameter files (structured text)


def params_to_text(p: TwistedCodeParams) -> str:
    lines = [
        "twistedrs-params v1",
        f"q0 = {p.tower.base_order}",
        f"levels = {p.tower.levels}",
        f"modulus = 0x{p.tower.modulus:x}",
        f"n = {p.n}",
        f"k = {p.k}",
        "t = " + ",".join(str(t) for t in p.twists),
        "h = " + ",".join(str(h) for h in p.hooks),
        "eta = " + ",".join(f"0x{e:x}" for e in p.etas),
        "alpha = " + ",".join(f"0x{a:x}" for a in p.alpha),
    ]
    return "\n".join(lines) + "\n"


def params_from_text(text: str) -> TwistedCodeParams:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "twistedrs-params v1":
        raise ParameterError("not a twistedrs-params v1 document")
    fields: dict[str, str] = {}
    for ln in lines[1:]:
        if "=" not in ln:
            raise ParameterError(f"malformed line: {ln!r}")
        key, _, val = ln.partition("=")
        fields[key.strip()] = val.strip()
    try:
        q0 = int(fields["q0"], 0)
        levels = int(fields["levels"], 0)
        modulus = int(fields["modulus"], 0)
        n = int(fields["n"], 0)
        k = int(fields["k"], 0)
        split = lambda s: tuple(int(x, 0) for x in s.split(",")) if s else ()
        twists = split(fields["t"])
        hooks = split(fields["h"])
        etas = split(fields["eta"])
        alpha = split(fields["alpha"])
    except KeyError as exc:
        raise ParameterError(f"missing field {exc}") from None
    tower = FieldTower(q0.bit_length() - 1, levels, modulus)
    p = TwistedCodeParams(tower, n, k, twists, hooks, etas, alpha)
    assert_valid(p)
    return p
