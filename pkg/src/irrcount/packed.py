"""Bit-packed arithmetic over GF(q)[x] and GF(q^n).

A polynomial (or extension-field element) with coefficients c_0, c_1, ...
in GF(2^k) is packed into one integer, coefficient i occupying bits
[i*k, (i+1)*k). Every routine here is written with plain integer operators
only, so the same code runs on Python ints and on numpy uint64 arrays; the
sweeps in ``oracle`` and the sieve in ``polyring`` rely on the latter.
"""

from __future__ import annotations

import numpy as np

from .gf2k import FieldParams


def pack(coeffs, k: int) -> int:
    v = 0
    for i, c in enumerate(coeffs):
        v |= int(c) << (i * k)
    return v


def unpack(v: int, k: int, length: int) -> list[int]:
    mask = (1 << k) - 1
    return [(v >> (i * k)) & mask for i in range(length)]


class SlotOps:
    """Coefficient-wise (slot-wise) operations on packed GF(q) vectors."""

    def __init__(self, base: FieldParams, slots: int):
        if slots * base.k > 64:
            raise ValueError("packed width exceeds 64 bits")
        self.base = base
        self.k = base.k
        self.slots = slots
        self.full = (1 << (slots * self.k)) - 1
        ones = pack([1] * slots, self.k)
        self.high = ones << (self.k - 1)
        self.low = self.full ^ self.high
        self.mlow = base.modulus ^ (1 << self.k)

    def times_alpha(self, v):
        """Multiply every slot by the class of x in GF(q)."""
        return ((v & self.low) << 1) ^ (((v & self.high) >> (self.k - 1)) * self.mlow)

    def alpha_powers(self, v) -> list:
        out = [v]
        for _ in range(self.k - 1):
            out.append(self.times_alpha(out[-1]))
        return out

    def scale(self, c: int, v):
        """Multiply every slot of ``v`` by the fixed scalar ``c``."""
        acc = 0
        for j, vj in enumerate(self.alpha_powers(v)):
            if c >> j & 1:
                acc = acc ^ vj
        return acc


class PackedExt:
    """GF(q^n) = GF(q)[x]/(f) on packed integers or uint64 arrays."""

    def __init__(self, base: FieldParams, modulus_coeffs):
        coeffs = [int(c) for c in modulus_coeffs]
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("extension modulus must be monic of degree >= 1")
        self.base = base
        self.k = base.k
        self.n = len(coeffs) - 1
        self.bits = self.n * self.k
        self.slots = SlotOps(base, self.n)
        self.full = self.slots.full
        self.size = 1 << self.bits
        self.top_shift = self.k * (self.n - 1)
        self.kmask = (1 << self.k) - 1
        low = pack(coeffs[:-1], self.k)
        # x^n = sum f_i x^i in characteristic 2; red[j] = alpha^j * that.
        self.red = self.slots.alpha_powers(low)

    def mul_x(self, v):
        top = v >> self.top_shift
        v = (v << self.k) & self.full
        for j in range(self.k):
            v = v ^ (((top >> j) & 1) * self.red[j])
        return v

    def mul(self, a, b):
        bj = self.slots.alpha_powers(b)
        acc = b & 0
        for i in range(self.n - 1, -1, -1):
            acc = self.mul_x(acc)
            ai = (a >> (i * self.k)) & self.kmask
            for j in range(self.k):
                acc = acc ^ (((ai >> j) & 1) * bj[j])
        return acc

    def square(self, a):
        return self.mul(a, a)

    def pow(self, a, e: int):
        result = (a & 0) | 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def frobenius(self, a):
        for _ in range(self.k):
            a = self.mul(a, a)
        return a

    def frobenius_table(self) -> np.ndarray:
        """Image of every element index under beta -> beta^q."""
        return self.frobenius(np.arange(self.size, dtype=np.uint64))


def poly_mul_packed(f_coeffs, g, base: FieldParams, g_slots: int):
    """Product of a fixed polynomial (coefficient list) with packed polynomial(s) ``g``.

    ``g`` holds ``g_slots`` coefficients; the result needs
    ``len(f_coeffs) + g_slots - 1`` slots.
    """
    k = base.k
    ops = SlotOps(base, g_slots)
    acc = g & 0
    for i, c in enumerate(f_coeffs):
        c = int(c)
        if c:
            acc = acc ^ (ops.scale(c, g) << (i * k))
    return acc
