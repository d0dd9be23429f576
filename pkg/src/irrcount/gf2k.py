"""Arithmetic in GF(q), q = 2^k, with elements encoded as k-bit integers.

Bit i of an element is the coefficient of x^i in its polynomial-basis
representation modulo a fixed irreducible binary polynomial. The reference
multiplication is shift-and-XOR; log/antilog tables are built lazily and are
checked against the reference in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import ParamsMismatch, ReducibleModulus, UnsupportedDegree

MAX_K = 16

# Numerically least irreducible binary polynomial of each degree (bit i is
# the coefficient of x^i). Regenerated by tests/test_gf2k.py.
DEFAULT_MODULI = {
    1: 0x2,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


def clmul(a: int, b: int) -> int:
    """Carry-less product of two binary polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def clmod(a: int, m: int) -> int:
    mb = m.bit_length()
    while a.bit_length() >= mb:
        a ^= m << (a.bit_length() - mb)
    return a


def binary_is_irreducible(f: int) -> bool:
    """Trial division of a binary polynomial by every polynomial of degree <= deg/2."""
    d = f.bit_length() - 1
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if clmod(f, g) == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldParams:
    """GF(2^k) defined by a binary modulus of degree k."""

    k: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise UnsupportedDegree(f"k={self.k} outside 1..{MAX_K}")
        if self.modulus.bit_length() - 1 != self.k:
            raise ReducibleModulus(f"modulus {self.modulus:#x} is not of degree {self.k}")
        if not binary_is_irreducible(self.modulus):
            raise ReducibleModulus(f"modulus {self.modulus:#x} is reducible")

    @property
    def q(self) -> int:
        return 1 << self.k

    def __repr__(self):
        return f"FieldParams(k={self.k}, modulus={self.modulus:#x})"

    # Reference arithmetic on raw integers.

    def mul_ref(self, a: int, b: int) -> int:
        r = 0
        top = 1 << self.k
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return r

    def pow_ref(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul_ref(r, a)
            a = self.mul_ref(a, a)
            e >>= 1
        return r

    # Table-driven arithmetic.

    @cached_property
    def generator(self) -> int:
        order = self.q - 1
        ps = _prime_factors(order)
        for g in range(1, self.q):
            if all(self.pow_ref(g, order // p) != 1 for p in ps):
                return g
        raise AssertionError("multiplicative group has no generator")

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        order = self.q - 1
        exp = [0] * (2 * order)
        log = [0] * self.q
        x = 1
        g = self.generator
        for i in range(order):
            exp[i] = exp[i + order] = x
            log[x] = i
            x = self.mul_ref(x, g)
        return exp, log

    @property
    def exp_table(self) -> list[int]:
        return self._tables[0]

    @property
    def log_table(self) -> list[int]:
        return self._tables[1]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^k)")
        exp, log = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        exp, log = self._tables
        return exp[(log[a] * e) % (self.q - 1)]

    def sqrt(self, a: int) -> int:
        return self.pow(a, self.q // 2)

    @cached_property
    def trace_mask(self) -> int:
        # absolute trace is GF(2)-linear: record its value on each basis bit
        mask = 0
        for i in range(self.k):
            if trace_sum(self, 1 << i):
                mask |= 1 << i
        return mask

    def tr(self, a: int) -> int:
        return (a & self.trace_mask).bit_count() & 1

    @cached_property
    def np_tables(self):
        """(exp, log, trace) as numpy arrays for vectorised row work."""
        exp, log = self._tables
        tr = np.array([self.tr(a) for a in range(self.q)], dtype=np.int8)
        return np.array(exp, dtype=np.int64), np.array(log, dtype=np.int64), tr

    def mul_array(self, a, b):
        """Elementwise product of integer arrays (or an array and a scalar)."""
        exp, log, _ = self.np_tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def elem(self, bits: int) -> FieldElement:
        return FieldElement(bits, self)

    def pretty(self, a: int) -> str:
        return element_pretty(a)


def trace_sum(params: FieldParams, a: int) -> int:
    """Absolute trace by its defining sum a + a^2 + ... + a^(2^(k-1))."""
    acc = 0
    for _ in range(params.k):
        acc ^= a
        a = params.mul_ref(a, a)
    assert acc in (0, 1), "absolute trace left GF(2)"
    return acc


def element_pretty(a: int, var: str = "a") -> str:
    if a == 0:
        return "0"
    terms = []
    for i in range(a.bit_length() - 1, -1, -1):
        if a >> i & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return "+".join(terms)


def fp_make(k: int, modulus: int | None = None) -> FieldParams:
    if not 1 <= k <= MAX_K:
        raise UnsupportedDegree(f"k={k} outside 1..{MAX_K}")
    if modulus is None:
        modulus = DEFAULT_MODULI[k]
    return FieldParams(k, modulus)


@dataclass(frozen=True)
class FieldElement:
    bits: int
    params: FieldParams

    def __post_init__(self):
        if not 0 <= self.bits < self.params.q:
            raise ValueError(f"{self.bits} is not an element of GF({self.params.q})")

    def _check(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.params is not self.params and other.params != self.params:
            raise ParamsMismatch(f"{self.params} vs {other.params}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.bits ^ other.bits, self.params)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.params.mul(self.bits, other.bits), self.params)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.params.pow(self.bits, e), self.params)

    def inverse(self) -> FieldElement:
        return FieldElement(self.params.inv(self.bits), self.params)

    def __bool__(self):
        return self.bits != 0

    def __int__(self):
        return self.bits

    def __index__(self):
        return self.bits

    def __repr__(self):
        return f"GF{self.params.q}({self.bits})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def pow(a: FieldElement, e: int) -> FieldElement:  # noqa: A001
    return a**e


def trace_to_gf2(a: FieldElement) -> int:
    return a.params.tr(a.bits)


def canonical_character(a: FieldElement) -> int:
    return -1 if trace_to_gf2(a) else 1


def sqrt(a: FieldElement) -> FieldElement:
    return FieldElement(a.params.sqrt(a.bits), a.params)


def v_weight(s: FieldElement) -> int:
    """q - 1 at zero and -1 elsewhere; sums to zero over the field."""
    return s.params.q - 1 if s.bits == 0 else -1


def elements(params: FieldParams) -> Iterator[FieldElement]:
    for i in range(params.q):
        yield FieldElement(i, params)
