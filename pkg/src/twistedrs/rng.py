"""Deterministic, seedable randomness.

Every random choice in this package (parameter sampling, key generation,
error vectors) flows through a :class:`StreamRNG` so that a given seed
reproduces the same artifact bit-for-bit on any platform and Python
version. The stream is SHAKE-256 in counter mode over a 32-byte seed;
serialized secret keys carry that seed, and the algorithm identifier below
is the format-level name of the construction.
"""

from __future__ import annotations

import hashlib

ALGORITHM_ID = "shake256-ctr-v1"

_BLOCK_BYTES = 64


def normalize_seed(seed: int | bytes) -> bytes:
    """Map an int or byte-string seed onto the canonical 32-byte form."""
    if isinstance(seed, int):
        if seed < 0:
            raise ValueError("seed must be nonnegative")
        return seed.to_bytes(32, "little")
    if isinstance(seed, (bytes, bytearray)):
        seed = bytes(seed)
        if len(seed) == 32:
            return seed
        return hashlib.shake_256(b"twistedrs-seed:" + seed).digest(32)
    raise TypeError(f"seed must be int or bytes, not {type(seed).__name__}")


class StreamRNG:
    """SHAKE-256 counter-mode byte stream with integer helpers."""

    def __init__(self, seed: int | bytes):
        self.seed = normalize_seed(seed)
        self._counter = 0
        self._buf = b""
        self._pos = 0

    def _refill(self) -> None:
        h = hashlib.shake_256(self.seed + self._counter.to_bytes(8, "little"))
        self._buf = h.digest(_BLOCK_BYTES)
        self._pos = 0
        self._counter += 1

    def randbytes(self, n: int) -> bytes:
        out = bytearray()
        while n > 0:
            if self._pos >= len(self._buf):
                self._refill()
            take = min(n, len(self._buf) - self._pos)
            out += self._buf[self._pos : self._pos + take]
            self._pos += take
            n -= take
        return bytes(out)

    def randbits(self, k: int) -> int:
        if k <= 0:
            return 0
        nbytes = (k + 7) // 8
        v = int.from_bytes(self.randbytes(nbytes), "little")
        return v & ((1 << k) - 1)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        k = n.bit_length()
        while True:
            v = self.randbits(k)
            if v < n:
                return v

    def sample_positions(self, n: int, count: int) -> list[int]:
        """`count` distinct positions from range(n), partial Fisher-Yates."""
        if count > n:
            raise ValueError("cannot sample more positions than exist")
        pool = list(range(n))
        for i in range(count):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:count]

    def fork(self, label: bytes | str) -> "StreamRNG":
        """Independent sub-stream bound to this seed and a label."""
        if isinstance(label, str):
            label = label.encode()
        sub = hashlib.shake_256(self.seed + b"/fork/" + label).digest(32)
        return StreamRNG(sub)
