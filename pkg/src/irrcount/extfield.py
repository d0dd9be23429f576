"""The extension GF(q^n) over GF(q): Frobenius, relative traces, trace and subtrace.

Elements are stored as packed integers (see ``packed``); ``ExtElement.coeffs``
gives the polynomial-basis coordinates as base-field element indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import (
    BudgetExceeded,
    DegreeTooSmall,
    NotADivisor,
    ParamsMismatch,
    PreconditionViolated,
    ReducibleModulus,
)
from .gf2k import FieldElement, FieldParams
from .packed import PackedExt, pack, unpack
from .polyring import DEFAULT_MAX_POLY, Poly, is_irreducible

DEFAULT_MAX_POINTS = 1 << 20
TABLE_LIMIT = 1 << 16


@dataclass(frozen=True)
class ExtFieldParams:
    base: FieldParams
    n: int
    modulus: Poly

    def __post_init__(self):
        if self.modulus.params != self.base:
            raise ParamsMismatch("modulus is over a different base field")
        if self.modulus.degree != self.n or not self.modulus.is_monic:
            raise ReducibleModulus(f"modulus must be monic of degree {self.n}")
        if not is_irreducible(self.modulus):
            raise ReducibleModulus(f"{self.modulus} is reducible over GF({self.base.q})")

    @cached_property
    def packed(self) -> PackedExt:
        return PackedExt(self.base, self.modulus.coeffs)

    @cached_property
    def tables(self):
        """(exp, log, frob) lists for fields of at most TABLE_LIMIT elements, else None."""
        if self.size > TABLE_LIMIT:
            return None
        pk = self.packed
        order = self.size - 1
        g = _primitive_element(pk, order)
        exp = np.ones(2 * order, dtype=np.uint64)
        filled, step = 1, g
        while filled < order:
            take = min(filled, order - filled)
            exp[filled : filled + take] = pk.mul(exp[:take], step)
            filled += take
            step = pk.mul(step, step)
        exp[order:] = exp[:order]
        log = np.zeros(self.size, dtype=np.int64)
        log[exp[:order].astype(np.int64)] = np.arange(order)
        frob = pk.frobenius_table() if self.n > 1 else np.arange(self.size, dtype=np.uint64)
        return exp.tolist(), log.tolist(), frob.tolist()

    def mul(self, a: int, b: int) -> int:
        tables = self.tables
        if tables is None:
            return self.packed.mul(a, b)
        if a == 0 or b == 0:
            return 0
        exp, log, _ = tables
        return exp[log[a] + log[b]]

    def frob(self, a: int) -> int:
        tables = self.tables
        if tables is None:
            return self.packed.frobenius(a)
        return tables[2][a]

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def size(self) -> int:
        return self.base.q**self.n

    def element(self, coeffs) -> ExtElement:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise ValueError(f"expected at most {self.n} coordinates")
        return ExtElement(pack(coeffs, self.base.k), self)

    def embed(self, c: int | FieldElement) -> ExtElement:
        return ExtElement(int(c), self)

    def zero(self) -> ExtElement:
        return ExtElement(0, self)

    def one(self) -> ExtElement:
        return ExtElement(1, self)

    def generator_x(self) -> ExtElement:
        """The class of x, a root of the modulus (for n = 1 this is the modulus root in GF(q))."""
        if self.n == 1:
            return self.embed(self.modulus.coeffs[0])
        return ExtElement(1 << self.base.k, self)


def _primitive_element(pk: PackedExt, order: int) -> int:
    primes, m, p = [], order, 2
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    for g in range(1, pk.size):
        if all(pk.pow(g, order // p) != 1 for p in primes):
            return g
    raise AssertionError("no primitive element found")


def ext_make(
    base: FieldParams, n: int, modulus: Poly | None = None, max_poly: int = DEFAULT_MAX_POLY
) -> ExtFieldParams:
    """GF(q^n) over ``base``; default modulus is the least monic irreducible by code order."""
    if n < 1:
        raise DegreeTooSmall("extension degree must be >= 1")
    if modulus is None:
        for code in range(min(base.q**n, max_poly)):
            f = Poly.from_code(code, n, base)
            # cheap rejections: divisible by x, or a square (no odd-degree terms)
            if n > 1 and (f.coeffs[0] == 0 or not any(f.coeffs[1::2])):
                continue
            if is_irreducible(f):
                modulus = f
                break
        else:
            raise BudgetExceeded("no irreducible modulus found within max_poly candidates")
    return ExtFieldParams(base, n, modulus)


@dataclass(frozen=True)
class ExtElement:
    code: int
    params: ExtFieldParams

    def _check(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        if other.params is not self.params and other.params != self.params:
            raise ParamsMismatch("elements of different extension fields")
        return other

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(unpack(self.code, self.params.base.k, self.params.n))

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.code ^ other.code, self.params)

    __sub__ = __add__

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.params.mul(self.code, other.code), self.params)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        tables = self.params.tables
        if tables is None or self.code == 0:
            return ExtElement(self.params.packed.pow(self.code, e), self.params)
        exp, log, _ = tables
        return ExtElement(exp[(log[self.code] * e) % (self.params.size - 1)], self.params)

    def frobenius(self, times: int = 1) -> ExtElement:
        v = self.code
        frob = self.params.frob
        for _ in range(times % self.params.n):
            v = frob(v)
        return ExtElement(v, self.params)

    def in_base_field(self) -> bool:
        return self.code >> self.params.base.k == 0

    def to_base(self) -> FieldElement:
        assert self.in_base_field(), "value expected in GF(q) has higher coordinates"
        return FieldElement(self.code, self.params.base)

    def __bool__(self):
        return self.code != 0

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


def ext_elements(params: ExtFieldParams) -> Iterator[ExtElement]:
    for code in range(params.size):
        yield ExtElement(code, params)


def parse_ext_element(text: str, params: ExtFieldParams) -> ExtElement:
    body = text.strip().strip("[]")
    return params.element(int(c) for c in body.split(",")) if body else params.zero()


def eadd(a: ExtElement, b: ExtElement) -> ExtElement:
    return a + b


def emul(a: ExtElement, b: ExtElement) -> ExtElement:
    return a * b


def epow(a: ExtElement, e: int) -> ExtElement:
    return a**e


def frobenius(beta: ExtElement) -> ExtElement:
    return beta.frobenius()


def _conjugate_codes(params: ExtFieldParams, code: int) -> list[int]:
    out = [code]
    frob = params.frob
    for _ in range(params.n - 1):
        out.append(frob(out[-1]))
    return out


def conjugates(beta: ExtElement) -> list[ExtElement]:
    """[beta, beta^q, ..., beta^(q^(n-1))]."""
    return [ExtElement(c, beta.params) for c in _conjugate_codes(beta.params, beta.code)]


def rel_trace(beta: ExtElement, m: int) -> ExtElement:
    """Tr_{q^n : q^m}(beta) = sum of beta^(q^(m*i)) for i < n/m."""
    n = beta.params.n
    if m < 1 or n % m:
        raise NotADivisor(f"{m} does not divide {n}")
    acc = beta.params.zero()
    x = beta
    for _ in range(n // m):
        acc = acc + x
        x = x.frobenius(m)
    assert acc.frobenius(m) == acc, "relative trace left the subfield"
    return acc


def subfield_trace(gamma: ExtElement, m: int) -> FieldElement:
    """Tr_{q^m : q}(gamma) for gamma lying in the subfield GF(q^m)."""
    n = gamma.params.n
    if m < 1 or n % m:
        raise NotADivisor(f"{m} does not divide {n}")
    if gamma.frobenius(m) != gamma:
        raise PreconditionViolated(f"element does not lie in GF(q^{m})")
    acc = gamma.params.zero()
    x = gamma
    for _ in range(m):
        acc = acc + x
        x = x.frobenius()
    return acc.to_base()


def _to_base(params: ExtFieldParams, code: int) -> FieldElement:
    assert code >> params.base.k == 0, "value expected in GF(q) has higher coordinates"
    return FieldElement(code, params.base)


def trace(beta: ExtElement) -> FieldElement:
    acc = 0
    for c in _conjugate_codes(beta.params, beta.code):
        acc ^= c
    return _to_base(beta.params, acc)


def subtrace(beta: ExtElement) -> FieldElement:
    """Second elementary symmetric function of the conjugates, by the pair sum."""
    params = beta.params
    if params.n < 2:
        raise DegreeTooSmall("subtrace needs n >= 2")
    conj = _conjugate_codes(params, beta.code)
    mul = params.mul
    acc = 0
    for i in range(len(conj)):
        for j in range(i + 1, len(conj)):
            acc ^= mul(conj[i], conj[j])
    return _to_base(params, acc)


def subtrace_lemma1(beta: ExtElement) -> FieldElement:
    """Subtrace as a sum of traces of beta^(q^i + 1).

    Every pair of conjugates {i, j} has cyclic distance d or n - d. For odd
    n = 2m + 1 the distances 1..m cover all pairs; for n = 2m the distance m
    pairs each conjugate with a single partner and contributes the trace of
    beta^(q^m + 1) from GF(q^m).
    """
    n = beta.params.n
    if n < 2:
        raise DegreeTooSmall("subtrace needs n >= 2")
    m = n // 2
    acc = beta.params.base.elem(0)
    for i in range(1, m if n % 2 == 0 else m + 1):
        acc = acc + trace(beta.frobenius(i) * beta)
    if n % 2 == 0:
        acc = acc + subfield_trace(beta.frobenius(m) * beta, m)
    return acc


def trace_subtrace_of_power_orbit(beta: ExtElement) -> tuple[FieldElement, FieldElement, int]:
    """(Tr(beta), St(beta), d) with d = n / deg Min(beta).

    The conjugates of beta run d times over the roots of p = Min(beta), so
    Tr(beta) = d Tr(p) and St(beta) = d St(p) + C(d, 2) Tr(p)^2.
    """
    from .polyring import minimal_polynomial, subtrace_of, trace_of

    params = beta.params
    n = params.n
    if n < 2:
        raise DegreeTooSmall("subtrace needs n >= 2")
    t, s = trace(beta), subtrace(beta)
    p = minimal_polynomial(beta)
    d = n // p.degree
    base = params.base
    tp = trace_of(p)
    sp = subtrace_of(p) if p.degree >= 2 else base.elem(0)
    zero = base.elem(0)
    want_t = tp if d % 2 else zero
    want_s = (sp if d % 2 else zero) + (tp * tp if (d * (d - 1) // 2) % 2 else zero)
    assert (t, s) == (want_t, want_s), "power-orbit relation violated"
    return t, s, d


def is_self_dual_normal(theta: ExtElement) -> bool:
    """Tr(theta^(q^i) theta^(q^j)) = [i == j] for all i, j."""
    conj = conjugates(theta)
    if trace(theta * theta).bits != 1:
        return False
    # Frobenius invariance reduces the condition to the first row
    for d in range(1, theta.params.n // 2 + 1):
        if trace(conj[0] * conj[d]).bits != 0:
            return False
    return True


def find_self_dual_normal_basis(
    params: ExtFieldParams, max_points: int = DEFAULT_MAX_POINTS
) -> ExtElement | None:
    if params.size > max_points:
        raise BudgetExceeded(f"q^n = {params.size} exceeds max_points={max_points}")
    for theta in ext_elements(params):
        if theta and is_self_dual_normal(theta):
            return theta
    return None


def normal_coordinates(beta: ExtElement, theta: ExtElement) -> list[int]:
    """Coordinates of beta in the self-dual normal basis generated by theta."""
    return [trace(beta * c).bits for c in conjugates(theta)]


def epsilon_of_basis(theta: ExtElement) -> FieldElement:
    """For n = 4m + 2: trace from GF(q^(2m+1)) of theta^(q^(2m+1) + 1)."""
    n = theta.params.n
    if n % 4 != 2:
        raise PreconditionViolated("epsilon is defined for n = 2 mod 4")
    if not is_self_dual_normal(theta):
        raise PreconditionViolated("theta does not generate a self-dual normal basis")
    h = n // 2
    return subfield_trace(theta.frobenius(h) * theta, h)
