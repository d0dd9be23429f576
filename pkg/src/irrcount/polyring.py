"""Polynomials over GF(q): arithmetic, irreducibility, enumeration, minimal polynomials."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DegreeTooSmall, ParamsMismatch
from .gf2k import FieldElement, FieldParams
from .packed import poly_mul_packed

DEFAULT_MAX_POLY = 1 << 22


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """Polynomial over GF(q); ``coeffs[i]`` is the element index of the x^i coefficient."""

    coeffs: tuple[int, ...]
    params: FieldParams

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if any(not 0 <= x < self.params.q for x in c):
            raise ValueError("coefficient out of range for the base field")
        object.__setattr__(self, "coeffs", _trim(c))

    @classmethod
    def from_code(cls, code: int, n: int, params: FieldParams, monic: bool = True) -> Poly:
        """Monic degree-n polynomial whose lower coefficients are the base-q digits of ``code``."""
        mask = params.q - 1
        coeffs = [(code >> (i * params.k)) & mask for i in range(n)]
        if monic:
            coeffs.append(1)
        return cls(tuple(coeffs), params)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> FieldElement:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(v, self.params)

    def code(self) -> int:
        """Base-q integer of the coefficients below the leading one."""
        v = 0
        for i, c in enumerate(self.coeffs[:-1]):
            v |= c << (i * self.params.k)
        return v

    def __add__(self, other: Poly) -> Poly:
        return padd(self, other)

    __sub__ = __add__

    def __mul__(self, other: Poly) -> Poly:
        return pmul(self, other)

    def __mod__(self, other: Poly) -> Poly:
        return pmod(self, other)

    def __call__(self, x: int) -> int:
        r = 0
        for c in reversed(self.coeffs):
            r = self.params.mul(r, x) ^ c
        return r

    def __str__(self):
        return to_text(self)


def _same(a: Poly, b: Poly):
    if a.params != b.params:
        raise ParamsMismatch(f"{a.params} vs {b.params}")


def padd(a: Poly, b: Poly) -> Poly:
    _same(a, b)
    n = max(len(a.coeffs), len(b.coeffs))
    ac = a.coeffs + (0,) * (n - len(a.coeffs))
    bc = b.coeffs + (0,) * (n - len(b.coeffs))
    return Poly(tuple(x ^ y for x, y in zip(ac, bc)), a.params)


def pmul(a: Poly, b: Poly) -> Poly:
    _same(a, b)
    if a.is_zero or b.is_zero:
        return Poly((), a.params)
    mul = a.params.mul
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] ^= mul(x, y)
    return Poly(tuple(out), a.params)


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    _same(a, b)
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    p = a.params
    r = list(a.coeffs)
    db = b.degree
    lead_inv = p.inv(b.coeffs[-1])
    quot = [0] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = p.mul(c, lead_inv)
            quot[i - db] = c
            for j, y in enumerate(b.coeffs):
                r[i - db + j] ^= p.mul(c, y)
    return Poly(tuple(quot), p), Poly(tuple(r[:db]), p)


def pmod(a: Poly, b: Poly) -> Poly:
    return pdivmod(a, b)[1]


def monic(a: Poly) -> Poly:
    if a.is_zero:
        return a
    c = a.params.inv(a.coeffs[-1])
    return Poly(tuple(a.params.mul(c, x) for x in a.coeffs), a.params)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    _same(a, b)
    while not b.is_zero:
        a, b = b, pmod(a, b)
    return monic(a)


def ppowmod(a: Poly, e: int, m: Poly) -> Poly:
    if m.is_zero:
        raise ZeroDivisionError("modulus is zero")
    result = pmod(Poly((1,), a.params), m)
    a = pmod(a, m)
    while e:
        if e & 1:
            result = pmod(pmul(result, a), m)
        e >>= 1
        if e:
            a = pmod(pmul(a, a), m)
    return result


def x_poly(params: FieldParams) -> Poly:
    return Poly((0, 1), params)


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/p)) - x, f) = 1 for primes p | n."""
    n = f.degree
    if n < 1:
        raise DegreeTooSmall("irreducibility needs degree >= 1")
    if n == 1:
        return True
    f = monic(f)
    q = f.params.q
    x = x_poly(f.params)
    # powers[i] = x^(q^i) mod f
    powers = [pmod(x, f)]
    for _ in range(n):
        powers.append(ppowmod(powers[-1], q, f))
    if powers[n] != pmod(x, f):
        return False
    for p in _prime_divisors(n):
        g = pgcd(padd(powers[n // p], x), f)
        if g.degree != 0:
            return False
    return True


def monic_polys(params: FieldParams, d: int) -> Iterator[Poly]:
    for code in range(params.q**d):
        yield Poly.from_code(code, d, params)


def is_irreducible_trial(f: Poly) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = f.degree
    if n < 1:
        raise DegreeTooSmall("irreducibility needs degree >= 1")
    for d in range(1, n // 2 + 1):
        for g in monic_polys(f.params, d):
            if pmod(f, g).is_zero:
                return False
    return True


@lru_cache(maxsize=64)
def _irreducible_codes(params: FieldParams, n: int) -> np.ndarray:
    q, k = params.q, params.k
    size = q**n
    if n == 1:
        out = np.arange(size, dtype=np.uint64)
        out.setflags(write=False)
        return out
    composite = np.zeros(size, dtype=bool)
    mask = size - 1
    for d in range(1, n // 2 + 1):
        rest = n - d
        g = np.arange(q**rest, dtype=np.uint64) | np.uint64(1 << (rest * k))
        for fcode in _irreducible_codes(params, d).tolist():
            f = [(fcode >> (i * k)) & (q - 1) for i in range(d)] + [1]
            prod = poly_mul_packed(f, g, params, rest + 1)
            composite[(prod & np.uint64(mask)).astype(np.int64)] = True
    out = np.flatnonzero(~composite).astype(np.uint64)
    out.setflags(write=False)
    return out


def irreducible_codes(params: FieldParams, n: int, max_poly: int = DEFAULT_MAX_POLY) -> np.ndarray:
    """Sorted codes of all monic irreducible degree-n polynomials, by sieving products."""
    if n < 1:
        raise DegreeTooSmall("degree must be >= 1")
    if params.q**n > max_poly:
        raise BudgetExceeded(f"q^n = {params.q}^{n} exceeds max_poly={max_poly}")
    return _irreducible_codes(params, n)


def enumerate_monic_irreducibles(
    params: FieldParams,
    n: int,
    t: int | None = None,
    s: int | None = None,
    max_poly: int = DEFAULT_MAX_POLY,
) -> list[Poly]:
    """Monic irreducibles of degree n in increasing code order, optionally filtered by trace/subtrace."""
    codes = irreducible_codes(params, n, max_poly)
    k, mask = params.k, params.q - 1
    if t is not None:
        codes = codes[((codes >> np.uint64((n - 1) * k)) & np.uint64(mask)) == int(t)]
    if s is not None:
        if n < 2:
            raise DegreeTooSmall("subtrace filter needs n >= 2")
        codes = codes[((codes >> np.uint64((n - 2) * k)) & np.uint64(mask)) == int(s)]
    return [Poly.from_code(int(c), n, params) for c in codes.tolist()]


def trace_of(f: Poly) -> FieldElement:
    if f.degree < 1:
        raise DegreeTooSmall("trace needs degree >= 1")
    return f.coeff(f.degree - 1)


def subtrace_of(f: Poly) -> FieldElement:
    if f.degree < 2:
        raise DegreeTooSmall("subtrace needs degree >= 2")
    return f.coeff(f.degree - 2)


def minimal_polynomial(beta) -> Poly:
    """Product of (x - c) over the Frobenius orbit of ``beta`` in GF(q^n)."""
    orbit = [beta]
    nxt = beta.frobenius()
    while nxt != beta:
        orbit.append(nxt)
        nxt = nxt.frobenius()
    zero = beta.params.zero()
    one = beta.params.one()
    coeffs = [one]
    for c in orbit:
        # multiply by (x + c)
        coeffs = [zero] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] = coeffs[i] + c * coeffs[i + 1]
    base = []
    for c in coeffs:
        assert c.in_base_field(), "minimal polynomial coefficient outside GF(q)"
        base.append(c.coeffs[0])
    return Poly(tuple(base), beta.params.base)


# Text formats.


def to_text(f: Poly, var: str = "x") -> str:
    if f.is_zero:
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms)


def to_index_seq(f: Poly) -> str:
    return "[" + ",".join(str(c) for c in f.coeffs) + "]"


_TERM = re.compile(r"^(?:(\d+)\*?)?(?:x(?:\^(\d+))?)?$")


def parse_poly(text: str, params: FieldParams) -> Poly:
    """Parse ``"x^3+2*x^2+1"`` or the index-sequence form ``"[1,0,2,1]"``."""
    text = text.replace(" ", "")
    if text.startswith("["):
        body = text.strip("[]")
        return Poly(tuple(int(c) for c in body.split(",")) if body else (), params)
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        m = _TERM.match(term)
        if not term or not m or (m.group(1) is None and "x" not in term):
            raise ValueError(f"cannot parse term {term!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if "x" in term:
            e = int(m.group(2)) if m.group(2) is not None else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) ^ c
    deg = max(coeffs) if coeffs else -1
    return Poly(tuple(coeffs.get(i, 0) for i in range(deg + 1)), params)
