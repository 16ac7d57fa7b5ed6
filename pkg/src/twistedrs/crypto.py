"""McEliece-style encryption demo over twisted RS codes, plus estimators.

Textbook McEliece with a systematic public key: the secret is the full
twisted-code description (the evaluation-point order and twist
coefficients are the keyspace; no separate scrambler or permutation
matrices), the public key is the right block A of the systematic
generator [I | A], and encryption adds exactly tau random errors.

THIS IS A RESEARCH ARTIFACT. No CCA transform, no KEM wrapper, no
constant-time guarantees, no key hygiene. It exists to measure structural
properties and reproduce security estimates, not to protect data.

The security estimators are closed formulas: information-set-decoding
work factor from exact binomials, systematic-key size, unique/list
decoding radii, and the naive keyspace count. They are reproduced as
computed values only; no attack is ever executed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import (
    SYSTEMATIC,
    CodeMatrix,
    TwistedCodeParams,
    family_f_params,
    generator_matrix,
    random_tower_params,
    systematic_form,
    systematic_transform,
    validate_params,
    vec_mat,
)
from .decoder import DEFAULT_BUDGET, twisted_decode
from .errors import KeyFormatError, ParameterError
from .gf import FieldTower
from .rng import StreamRNG

_U64 = np.uint64

MAGIC_KEY = b"TRS1"
MAGIC_CIPHERTEXT = b"TRSC"
FORMAT_VERSION = 1  # also pins the RNG construction (shake256-ctr-v1)
ROLE_PUBLIC = 0
ROLE_SECRET = 1

KEYGEN_VARIANTS = ("F", "Ftilde", "toy")


@dataclass(frozen=True)
class PublicKey:
    """Systematic public key: the A block of [I | A] plus metadata."""

    base_degree: int
    levels: int
    modulus: int
    n: int
    k: int
    tau: int
    a_block: np.ndarray  # k x (n-k)

    @property
    def tower(self) -> FieldTower:
        return FieldTower(self.base_degree, self.levels, self.modulus)

    def systematic_matrix(self) -> CodeMatrix:
        tower = self.tower
        full = np.zeros((self.k, self.n), dtype=_U64)
        full[:, : self.k] = np.eye(self.k, dtype=_U64)
        full[:, self.k :] = self.a_block
        return CodeMatrix(tower, full, SYSTEMATIC)


@dataclass(frozen=True)
class SecretKey:
    """Secret code description plus the systematic basis change."""

    params: TwistedCodeParams
    tau: int
    transform: np.ndarray  # k x k: m_public = m_secret @ transform
    seed: bytes


@dataclass(frozen=True)
class KeyPair:
    public: PublicKey
    secret: SecretKey


def keygen(
    n: int,
    k: int,
    ell: int,
    q0: int,
    variant: str = "F",
    seed: int | bytes = 0,
) -> KeyPair:
    """Draw code parameters, publish the systematic A block, keep the rest.

    Variants "F" and "Ftilde" are the structured family with its admission
    inequalities. Variant "toy" draws random tower-certified parameters
    with no admission bounds: it exists so sub-family-scale profiles (for
    tests and demos) can run end to end, and it carries no security claim.
    """
    if variant not in KEYGEN_VARIANTS:
        raise ParameterError(f"unknown keygen variant {variant!r}")
    rng = StreamRNG(seed)
    if variant == "toy":
        params = random_tower_params(n, k, ell, q0, rng)
    else:
        params = family_f_params(n, k, ell, q0, variant, rng=rng)
    G = generator_matrix(params)
    S = systematic_form(G)  # MDS guarantees the left block is invertible
    tau = (n - k) // 2
    public = PublicKey(
        base_degree=params.tower.base_degree,
        levels=params.tower.levels,
        modulus=params.tower.modulus,
        n=n,
        k=k,
        tau=tau,
        a_block=np.ascontiguousarray(S.entries[:, k:]),
    )
    secret = SecretKey(
        params=params,
        tau=tau,
        transform=systematic_transform(G),
        seed=rng.seed,
    )
    return KeyPair(public, secret)


def encrypt(public: PublicKey, message, seed: int | bytes) -> np.ndarray:
    """message @ [I | A] plus a uniform weight-tau error vector."""
    tower = public.tower
    msg = tower.coerce_vector(message)
    if len(msg) != public.k:
        raise ValueError(f"message length {len(msg)} != k = {public.k}")
    cw = np.zeros(public.n, dtype=_U64)
    cw[: public.k] = msg
    cw[public.k :] = vec_mat(tower, msg, public.a_block)
    rng = StreamRNG(seed)
    support = rng.sample_positions(public.n, public.tau)
    for pos in support:
        cw[pos] ^= np.uint64(rng.randbelow(tower.order - 1) + 1)
    return cw


def decrypt(
    secret: SecretKey,
    ciphertext,
    budget: int = DEFAULT_BUDGET,
    tau: int | None = None,
    telemetry: dict | None = None,
) -> np.ndarray | None:
    """Recover the message in public-key coordinates, or None on failure.

    Decodes with the secret twisted decoder (message lands in the
    monomial-like basis), then maps back through the systematic basis
    change. The decoder's distance check guarantees any returned message
    re-encodes within tau of the ciphertext.
    """
    res = twisted_decode(
        ciphertext,
        secret.params,
        tau=secret.tau if tau is None else tau,
        budget=budget,
        telemetry=telemetry,
    )
    if res is None:
        return None
    return vec_mat(secret.params.tower, res.message, secret.transform)


# ---------------------------------------------------------------------------
# security estimators


@dataclass(frozen=True)
class SecurityEstimate:
    """Closed-formula security figures for an [n, k] code over 2^log2_q."""

    n: int
    k: int
    log2_q: int
    tau: int
    work_factor_log2: float
    key_size_kb: float
    tau_unique: int
    tau_list: int
    keyspace_log2: float


def isd_work_factor_log2(n: int, k: int, log2_q: int, tau: int) -> float:
    """log2 of the classical information-set-decoding work factor
    binom(n,k)/binom(n-tau,k) * k^3 * log2(q)^2, from exact binomials."""
    if not 0 <= tau < n - k:
        raise ParameterError(f"tau = {tau} must satisfy 0 <= tau < n - k")
    num = math.comb(n, k)
    den = math.comb(n - tau, k)
    return (
        math.log2(num)
        - math.log2(den)
        + 3 * math.log2(k)
        + 2 * math.log2(log2_q)
    )


def systematic_key_size_kb(n: int, k: int, log2_q: int) -> float:
    """k(n-k) log2(q) bits expressed in KB (8192 bits per KB)."""
    return k * (n - k) * log2_q / 8192


def unique_radius(n: int, k: int) -> int:
    return (n - k) // 2


def johnson_radius(n: int, k: int) -> int:
    """floor(n - sqrt(n(k-1))), computed with exact integer square roots."""
    m = n * (k - 1)
    s = math.isqrt(m)
    return n - s if s * s == m else n - s - 1


def keyspace_log2(n: int, log2_q: int) -> float:
    """log2 of the naive keyspace count n! (q - sqrt(q)).

    The count is an upper-bound-style estimate: distinct parameter tuples,
    not inequivalent codes.
    """
    if log2_q % 2 == 0:
        tail = (1 << log2_q) - (1 << (log2_q // 2))
        return math.log2(math.factorial(n)) + math.log2(tail)
    return math.log2(math.factorial(n)) + math.log2(2.0**log2_q - 2.0 ** (log2_q / 2))


def security_estimate(n: int, k: int, log2_q: int, tau: int) -> SecurityEstimate:
    return SecurityEstimate(
        n=n,
        k=k,
        log2_q=log2_q,
        tau=tau,
        work_factor_log2=isd_work_factor_log2(n, k, log2_q, tau),
        key_size_kb=systematic_key_size_kb(n, k, log2_q),
        tau_unique=unique_radius(n, k),
        tau_list=johnson_radius(n, k),
        keyspace_log2=keyspace_log2(n, log2_q),
    )


# ---------------------------------------------------------------------------
# serialization
#
# Key file: magic "TRS1" | version u8 | role u8 | m0 u8 | modulus u64 LE |
#           ell u8 | n u16 LE | k u16 LE | tau u16 LE | payload.
# ell is simultaneously the twist count and the tower level count (the
# construction ties them: q = q0^(2^ell)). The modulus field stores the
# top-field polynomial with its (monic) leading term stripped; the degree
# m0 * 2^ell is implied, which keeps degree-64 moduli inside eight bytes.
# Elements are ceil(m/8) bytes LE. Public payload: A row-major. Secret
# payload: t[] u16, h[] u16, eta[] elements, alpha[] elements, transform
# row-major, seed (32 bytes).
# Ciphertext file: magic "TRSC" | n u16 LE | n elements.


def _header(role: int, tower_desc: tuple[int, int, int], n: int, k: int, tau: int) -> bytes:
    m0, levels, modulus = tower_desc
    m = m0 << levels
    modlow = modulus ^ (1 << m)
    return (
        MAGIC_KEY
        + bytes([FORMAT_VERSION, role, m0])
        + modlow.to_bytes(8, "little")
        + bytes([levels])
        + n.to_bytes(2, "little")
        + k.to_bytes(2, "little")
        + tau.to_bytes(2, "little")
    )


_HEADER_LEN = 4 + 3 + 8 + 1 + 6


def _elements_to_bytes(values, size: int) -> bytes:
    return b"".join(int(v).to_bytes(size, "little") for v in values)


def _elements_from_bytes(data: bytes, size: int, count: int) -> list[int]:
    if len(data) < size * count:
        raise KeyFormatError("truncated element block")
    return [
        int.from_bytes(data[i * size : (i + 1) * size], "little")
        for i in range(count)
    ]


def serialize_public_key(pub: PublicKey) -> bytes:
    size = ((pub.base_degree << pub.levels) + 7) // 8
    head = _header(
        ROLE_PUBLIC, (pub.base_degree, pub.levels, pub.modulus), pub.n, pub.k, pub.tau
    )
    return head + _elements_to_bytes(pub.a_block.ravel(), size)


def serialize_secret_key(sec: SecretKey) -> bytes:
    p = sec.params
    tower = p.tower
    if p.ell != tower.levels:
        # the header's single count byte serves as both twist count and
        # tower level count; keygen always produces them equal
        raise ValueError("twist count and tower levels must agree to serialize")
    size = tower.element_bytes
    head = _header(
        ROLE_SECRET,
        (tower.base_degree, tower.levels, tower.modulus),
        p.n,
        p.k,
        sec.tau,
    )
    body = bytearray(head)
    for t in p.twists:
        body += t.to_bytes(2, "little")
    for h in p.hooks:
        body += h.to_bytes(2, "little")
    body += _elements_to_bytes(p.etas, size)
    body += _elements_to_bytes(p.alpha, size)
    body += _elements_to_bytes(sec.transform.ravel(), size)
    body += sec.seed
    return bytes(body)


def _parse_header(data: bytes):
    if len(data) < _HEADER_LEN:
        raise KeyFormatError("key file shorter than its header")
    if data[:4] != MAGIC_KEY:
        raise KeyFormatError(f"bad magic {data[:4]!r}; expected {MAGIC_KEY!r}")
    version, role, m0 = data[4], data[5], data[6]
    if version != FORMAT_VERSION:
        raise KeyFormatError(f"unsupported key format version {version}")
    if role not in (ROLE_PUBLIC, ROLE_SECRET):
        raise KeyFormatError(f"unknown key role {role}")
    modlow = int.from_bytes(data[7:15], "little")
    levels = data[15]
    n = int.from_bytes(data[16:18], "little")
    k = int.from_bytes(data[18:20], "little")
    tau = int.from_bytes(data[20:22], "little")
    m = m0 << levels
    if not 2 <= m <= 64:
        raise KeyFormatError(f"field descriptor degree {m} unsupported")
    modulus = modlow | (1 << m)
    return role, m0, levels, modulus, n, k, tau


def deserialize_key(data: bytes) -> PublicKey | SecretKey:
    role, m0, levels, modulus, n, k, tau = _parse_header(data)
    try:
        tower = FieldTower(m0, levels, modulus)
    except ValueError as exc:
        raise KeyFormatError(f"field descriptor rejected: {exc}") from exc
    size = tower.element_bytes
    body = data[_HEADER_LEN:]
    if role == ROLE_PUBLIC:
        want = k * (n - k) * size
        if len(body) != want:
            raise KeyFormatError(f"public payload is {len(body)} bytes, expected {want}")
        vals = _elements_from_bytes(body, size, k * (n - k))
        a = np.array(vals, dtype=_U64).reshape(k, n - k)
        return PublicKey(m0, levels, modulus, n, k, tau, a)
    ell = levels
    off = 0
    want = ell * 2 * 2 + ell * size + n * size + k * k * size + 32
    if len(body) != want:
        raise KeyFormatError(f"secret payload is {len(body)} bytes, expected {want}")
    twists = tuple(
        int.from_bytes(body[off + 2 * i : off + 2 * i + 2], "little") for i in range(ell)
    )
    off += 2 * ell
    hooks = tuple(
        int.from_bytes(body[off + 2 * i : off + 2 * i + 2], "little") for i in range(ell)
    )
    off += 2 * ell
    etas = tuple(_elements_from_bytes(body[off:], size, ell))
    off += ell * size
    alpha = tuple(_elements_from_bytes(body[off:], size, n))
    off += n * size
    tvals = _elements_from_bytes(body[off:], size, k * k)
    off += k * k * size
    seed = body[off : off + 32]
    params = TwistedCodeParams(tower, n, k, twists, hooks, etas, alpha)
    bad = validate_params(params)
    if bad:
        raise KeyFormatError("secret key violates invariants: " + "; ".join(bad))
    transform = np.array(tvals, dtype=_U64).reshape(k, k)
    return SecretKey(params=params, tau=tau, transform=transform, seed=seed)


def write_ciphertext(c: np.ndarray, element_bytes: int) -> bytes:
    return (
        MAGIC_CIPHERTEXT
        + len(c).to_bytes(2, "little")
        + _elements_to_bytes(c, element_bytes)
    )


def read_ciphertext(data: bytes) -> np.ndarray:
    if len(data) < 6 or data[:4] != MAGIC_CIPHERTEXT:
        raise KeyFormatError("not a twistedrs ciphertext")
    n = int.from_bytes(data[4:6], "little")
    body = data[6:]
    if n == 0 or len(body) % n:
        raise KeyFormatError("ciphertext element block has impossible length")
    size = len(body) // n
    return np.array(_elements_from_bytes(body, size, n), dtype=_U64)


# ---------------------------------------------------------------------------
# message codec (CLI-level convention)


def message_capacity_bytes(k: int, m0: int) -> int:
    """Bytes one block can carry after the u8 length prefix (255 max)."""
    return min(max((k * m0 - 8) // 8, 0), 255)


def pack_message(data: bytes, k: int, m0: int) -> np.ndarray:
    """Length-prefixed bytes -> k field elements of m0-bit chunks.

    The payload (u8 length + data) is read as one little-endian integer
    and split into m0-bit chunks, zero-padded to k elements.
    """
    if len(data) > message_capacity_bytes(k, m0):
        raise ParameterError(
            f"message of {len(data)} bytes exceeds the "
            f"{message_capacity_bytes(k, m0)}-byte block capacity"
        )
    payload = bytes([len(data)]) + data
    val = int.from_bytes(payload, "little")
    mask = (1 << m0) - 1
    out = np.zeros(k, dtype=_U64)
    for i in range(k):
        out[i] = (val >> (i * m0)) & mask
    return out


def unpack_message(vec, k: int, m0: int) -> bytes:
    """Inverse of pack_message."""
    val = 0
    for i, chunk in enumerate(int(v) for v in vec):
        if chunk >> m0:
            raise KeyFormatError("packed element exceeds the m0-bit chunk size")
        val |= chunk << (i * m0)
    nbytes = (k * m0 + 7) // 8
    payload = val.to_bytes(max(nbytes, 1), "little")
    length = payload[0]
    if length > message_capacity_bytes(k, m0):
        raise KeyFormatError("packed message declares an impossible length")
    return payload[1 : 1 + length]
