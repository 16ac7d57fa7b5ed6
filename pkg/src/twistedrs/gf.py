"""Binary field towers GF(2^m), m <= 64, with subfield-chain predicates.

A tower is GF(q0^(2^levels)) for q0 = 2^base_degree, presented as the
single top field GF(2^m) with m = base_degree * 2^levels. Elements are
bit-packed polynomial-basis vectors: bit i of the int is the coefficient
of X^i modulo the tower's irreducible polynomial. All arithmetic happens
in the top field; the intermediate fields of the chain are reached through
Frobenius fixed-point tests rather than explicit embeddings, which is all
the constructions here ever need.

The default modulus for degree m is the lexicographically least
irreducible polynomial (integer-encoding order), computed on demand and
verified at construction; any caller-supplied irreducible polynomial of
the right degree is accepted and recorded in serialized formats.

Odd characteristic and degrees above 64 are out of scope.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from ._backend import FieldOps
from ._field_common import (
    TABLE_MAX_M,
    find_generator,
    is_irreducible,
    least_irreducible,
    poly2_degree,
)
from .errors import FieldMismatchError
from .rng import StreamRNG

_U64 = np.uint64

_OPS_CACHE: dict[tuple[int, int], object] = {}


def _ops_for(m: int, modulus: int):
    key = (m, modulus)
    ops = _OPS_CACHE.get(key)
    if ops is None:
        gen = find_generator(m, modulus) if m <= TABLE_MAX_M else 0
        ops = FieldOps(m, modulus, gen)
        _OPS_CACHE[key] = ops
    return ops


class FieldElement:
    """An element of a tower's top field; mixes only with compatible fields."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "FieldTower"):
        self.value = value
        self.field = field

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if not self.field.compatible(other.field):
                raise FieldMismatchError(
                    f"cannot mix elements of {self.field} and {other.field}"
                )
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value ^ v, self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field.ops.mul(self.value, v), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError("division by zero field element")
        return FieldElement(
            self.field.ops.mul(self.value, self.field.ops.inv(v)), self.field
        )

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.ops.inv(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.compatible(other.field) and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.top_degree, self.field.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        width = (self.field.top_degree + 3) // 4
        return f"<GF(2^{self.field.top_degree}): 0x{self.value:0{width}x}>"


class FieldTower:
    """GF(q0^(2^levels)) with its chain of subfields, q0 = 2^base_degree."""

    characteristic = 2

    def __init__(self, base_degree: int, levels: int, modulus: int | None = None):
        if base_degree < 1:
            raise ValueError("base_degree must be >= 1")
        if levels < 0:
            raise ValueError("levels must be >= 0")
        m = base_degree << levels
        if not 2 <= m <= 64:
            raise ValueError(f"top-field degree {m} outside supported range 2..64")
        if modulus is None:
            modulus = least_irreducible(m)
        if poly2_degree(modulus) != m:
            raise ValueError("modulus degree does not match the tower degree")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus 0x{modulus:x} is reducible")
        self.base_degree = base_degree
        self.levels = levels
        self.top_degree = m
        self.modulus = modulus
        self.order = 1 << m
        self.base_order = 1 << base_degree
        # s_i = q0^(2^i): orders of the chain F_{s_0} < ... < F_{s_levels}
        self.subfield_orders = tuple(
            1 << (base_degree << i) for i in range(levels + 1)
        )
        self.ops = _ops_for(m, modulus)

    # -- identity --------------------------------------------------------

    def compatible(self, other: "FieldTower") -> bool:
        """Same top-field arithmetic (degree and modulus)."""
        return (
            self.top_degree == other.top_degree and self.modulus == other.modulus
        )

    def __eq__(self, other):
        return (
            isinstance(other, FieldTower)
            and self.base_degree == other.base_degree
            and self.levels == other.levels
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.base_degree, self.levels, self.modulus))

    def __repr__(self):
        return (
            f"FieldTower(GF(2^{self.base_degree})^(2^{self.levels})"
            f" = GF(2^{self.top_degree}), modulus=0x{self.modulus:x})"
        )

    # -- element construction -------------------------------------------

    def element(self, value) -> FieldElement:
        v = int(value)
        if not 0 <= v < self.order:
            raise ValueError(f"value 0x{v:x} outside field of order 2^{self.top_degree}")
        return FieldElement(v, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def _val(self, x) -> int:
        if isinstance(x, FieldElement):
            if not self.compatible(x.field):
                raise FieldMismatchError(f"element of {x.field} used in {self}")
            return x.value
        v = int(x)
        if not 0 <= v < self.order:
            raise ValueError(f"value 0x{v:x} outside field of order 2^{self.top_degree}")
        return v

    # -- arithmetic ------------------------------------------------------

    def add(self, a, b) -> FieldElement:
        return FieldElement(self._val(a) ^ self._val(b), self)

    def mul(self, a, b) -> FieldElement:
        return FieldElement(self.ops.mul(self._val(a), self._val(b)), self)

    def div(self, a, b) -> FieldElement:
        bv = self._val(b)
        if bv == 0:
            raise ZeroDivisionError("division by zero field element")
        return FieldElement(self.ops.mul(self._val(a), self.ops.inv(bv)), self)

    def inv(self, a) -> FieldElement:
        return FieldElement(self.ops.inv(self._val(a)), self)

    def pow(self, a, e: int) -> FieldElement:
        """a**e for any integer e; negative e inverts a nonzero base."""
        v = self._val(a)
        e = int(e)
        if v == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return FieldElement(1 if e == 0 else 0, self)
        group = self.order - 1
        e %= group  # x^(q-1) = 1 for x != 0
        return FieldElement(self.ops.pow(v, e), self)

    # -- subfield chain --------------------------------------------------

    def frobenius_power(self, x, squarings: int) -> int:
        """x^(2^squarings) by repeated squaring, as a raw value."""
        v = self._val(x)
        for _ in range(squarings):
            v = self.ops.mul(v, v)
        return v

    def is_in_subfield(self, x, level: int) -> bool:
        """True iff x is fixed by the Frobenius power of chain level `level`,
        i.e. x^(s_level) = x with s_i = q0^(2^i)."""
        if not 0 <= level <= self.levels:
            raise ValueError(f"level {level} outside 0..{self.levels}")
        v = self._val(x)
        return self.frobenius_power(v, self.base_degree << level) == v

    def sample_eta(self, level: int, rng: StreamRNG) -> FieldElement:
        """Uniform element of F_{s_level} \\ F_{s_(level-1)}.

        Draws a uniform nonzero top-field element, projects onto F_{s_level}
        through the norm map x -> x^((q-1)/(s_level - 1)), and rejects until
        the result leaves the next-lower subfield. The target set is
        nonempty (s_(level-1) < s_level), so this terminates.
        """
        if not 1 <= level <= self.levels:
            raise ValueError(f"level {level} outside 1..{self.levels}")
        s = self.subfield_orders[level]
        exponent = (self.order - 1) // (s - 1)
        while True:
            x = rng.randbelow(self.order - 1) + 1
            y = self.ops.pow(x, exponent)
            if not self.is_in_subfield(y, level - 1):
                return FieldElement(y, self)

    def sample_base_element(self, rng: StreamRNG, nonzero: bool = True) -> int:
        """Uniform element of the bottom subfield F_{q0}, as a raw value.

        The norm map x -> x^((q-1)/(q0-1)) sends a uniform nonzero top
        element to a uniform nonzero base element (its fibers all have the
        same size). Zero is mixed back in by an explicit 1/q0 coin when
        requested.
        """
        if not nonzero and rng.randbelow(self.base_order) == 0:
            return 0
        exponent = (self.order - 1) // (self.base_order - 1)
        x = rng.randbelow(self.order - 1) + 1
        return self.ops.pow(x, exponent)

    def random_element(self, rng: StreamRNG, nonzero: bool = False) -> FieldElement:
        if nonzero:
            return FieldElement(rng.randbelow(self.order - 1) + 1, self)
        return FieldElement(rng.randbelow(self.order), self)

    # -- enumeration and serialization ------------------------------------

    def enumerate(self) -> Iterator[FieldElement]:
        """All q elements, streamed in increasing bit-pattern order."""
        for v in range(self.order):
            yield FieldElement(v, self)

    @property
    def element_bytes(self) -> int:
        return (self.top_degree + 7) // 8

    def element_to_bytes(self, x) -> bytes:
        return self._val(x).to_bytes(self.element_bytes, "little")

    def element_from_bytes(self, data: bytes) -> FieldElement:
        if len(data) != self.element_bytes:
            raise ValueError("wrong element byte length")
        return self.element(int.from_bytes(data, "little"))

    def descriptor(self) -> tuple[int, int, int]:
        """(characteristic, degree, modulus): the file-format field identity."""
        return (self.characteristic, self.top_degree, self.modulus)

    def coerce_vector(self, seq) -> np.ndarray:
        """Normalize a sequence of ints / FieldElements to a uint64 array."""
        if isinstance(seq, np.ndarray) and seq.dtype == _U64:
            return np.ascontiguousarray(seq)
        return np.fromiter(
            (self._val(x) for x in seq), dtype=_U64, count=len(seq)
        )


def enumerate_field(tower: FieldTower) -> Iterator[FieldElement]:
    """All q elements of the tower's top field in bit-pattern order."""
    return tower.enumerate()
