"""Closed-form counts of elements, tuples and irreducible polynomials by trace and subtrace.

All arithmetic is on exact Python integers. Scalar entry points take
``FieldElement`` arguments (plain element indices are accepted too); the
``*_table`` builders produce full (t, s) grids as ``CountTable``.

Branch names used for the optional sign flips of ``F_closed`` (mutation
testing only): ``"4m+1"``, ``"4m-1"``, ``"4m+2"``, ``"4m"``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Collection

import numpy as np

from .errors import DegreeTooSmall, InexactDivision, NegativeCount
from .gf2k import FieldElement, FieldParams, fp_make

KINDS = ("F", "Fstar", "P")
BRANCHES = ("4m+1", "4m-1", "4m+2", "4m")


def mobius(d: int) -> int:
    if d < 1:
        raise ValueError("mobius is defined for d >= 1")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def exact_div(num: int, den: int) -> int:
    quot, rem = divmod(num, den)
    if rem:
        raise InexactDivision(f"{num} is not divisible by {den}")
    return quot


def classical_count(params: FieldParams, n: int) -> int:
    """Number of monic irreducible polynomials of degree n over GF(q)."""
    if n < 1:
        raise DegreeTooSmall("n must be >= 1")
    q = params.q
    return exact_div(sum(mobius(d) * q ** (n // d) for d in divisors(n)), n)


def classical_count_trace_nonzero(params: FieldParams, n: int) -> int:
    """Number of monic irreducibles of degree n with a given nonzero trace."""
    if n < 1:
        raise DegreeTooSmall("n must be >= 1")
    q = params.q
    odd = sum(mobius(d) * q ** (n // d) for d in divisors(n) if d % 2)
    return exact_div(odd, q * n)


def _idx(x) -> int:
    return x.bits if isinstance(x, FieldElement) else int(x)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _v(params: FieldParams, s: int) -> int:
    return params.q - 1 if s == 0 else -1


def _chi(params: FieldParams, a: int) -> int:
    return -1 if params.tr(a) else 1


def _ratio_over_square(params: FieldParams, s: int, t: int) -> int:
    """s / t^2 for t != 0."""
    return params.mul(s, params.inv(params.mul(t, t)))


def F_one(params: FieldParams, t, s) -> int:
    """Elements of GF(q) with trace t and (empty) subtrace s: only beta = t, and only if s = 0."""
    return 1 if _idx(s) == 0 else 0


def F_closed(params: FieldParams, n: int, t, s, flip: Collection[str] = ()) -> int:
    """Number of beta in GF(q^n) with Tr(beta) = t and St(beta) = s, for n >= 2."""
    if n < 2:
        raise DegreeTooSmall("closed form needs n >= 2; use F_dispatch for n = 1")
    t, s = _idx(t), _idx(s)
    q, k = params.q, params.k
    base = q ** (n - 2)
    r = n % 4
    if r == 1:
        m = (n - 1) // 4
        sg = _sign(m * k) * (-1 if "4m+1" in flip else 1)
        return base + sg * _v(params, s) * q ** (2 * m - 1)
    if r == 3:
        m = (n + 1) // 4
        # sign exponent is m*k: the chi(1) = (-1)^k factor from the recursion step
        # does not cancel for odd k. t^2 - s is t^2 + s in characteristic 2.
        sg = _sign(m * k) * (-1 if "4m-1" in flip else 1)
        return base + sg * _v(params, params.mul(t, t) ^ s) * q ** (2 * m - 2)
    if r == 2:
        m = (n - 2) // 4
        if t == 0:
            return base
        sg = _sign(m * k) * (-1 if "4m+2" in flip else 1)
        return base - sg * _chi(params, _ratio_over_square(params, s, t)) * q ** (2 * m)
    m = n // 4
    if t != 0:
        return base
    sg = _sign(m * k) * (-1 if "4m" in flip else 1)
    return base - sg * _v(params, s) * q ** (2 * m - 1)


def F_dispatch(params: FieldParams, n: int, t, s) -> int:
    if n < 1:
        raise DegreeTooSmall("n must be >= 1")
    if n == 1:
        return F_one(params, t, s)
    return F_closed(params, n, t, s)


def Fstar_closed(params: FieldParams, n: int, t, s) -> int:
    """Number of n-tuples over GF(q) with coordinate sum t and pairwise-product sum s."""
    if n < 2:
        raise DegreeTooSmall("n must be >= 2")
    t, s = _idx(t), _idx(s)
    q, k = params.q, params.k
    base = q ** (n - 2)
    r = n % 4
    if r == 1:
        m = (n - 1) // 4
        return base + _sign(m * k) * _v(params, s) * q ** (2 * m - 1)
    if r == 2:
        m = (n - 2) // 4
        if t == 0:
            return base
        return base + _sign(m * k) * _chi(params, _ratio_over_square(params, s, t)) * q ** (2 * m)
    if r == 3:
        m = (n + 1) // 4
        return base + _sign(m * k) * _v(params, params.mul(t, t) ^ s) * q ** (2 * m - 2)
    m = n // 4
    if t != 0:
        return base
    return base + _sign(m * k) * _v(params, s) * q ** (2 * m - 1)


def _quadratic_roots(params: FieldParams, t: int, s: int) -> int:
    """Roots of x^2 + t x + s in GF(q)."""
    if t == 0:
        return 1
    return 0 if params.tr(_ratio_over_square(params, s, t)) else 2


@lru_cache(maxsize=None)
def _fstar_rec(params: FieldParams, n: int, t: int, s: int) -> int:
    if n == 2:
        return _quadratic_roots(params, t, s)
    total = 0
    mul = params.mul
    # fix the last coordinate to alpha
    for a in range(params.q):
        total += _fstar_rec(params, n - 1, t ^ a, s ^ mul(a, t) ^ mul(a, a))
    return total


def Fstar_recursive(params: FieldParams, n: int, t, s) -> int:
    if n < 2:
        raise DegreeTooSmall("n must be >= 2")
    return _fstar_rec(params, n, _idx(t), _idx(s))


def P_count(params: FieldParams, n: int, t, s, F: Callable = F_dispatch) -> int:
    """Monic irreducibles of degree n over GF(q) with trace t and subtrace s."""
    if n < 2:
        raise DegreeTooSmall("n must be >= 2")
    t, s = _idx(t), _idx(s)
    q = params.q
    total = 0
    if t == 0:
        for d in divisors(n):
            if d % 2 == 0:
                continue
            term = F(params, n // d, 0, s)
            if n % 2 == 0:
                term -= q ** (n // (2 * d) - 1)
            total += mobius(d) * term
    else:
        t2s = params.mul(t, t) ^ s
        for d in divisors(n):
            if d % 4 == 1:
                total += mobius(d) * F(params, n // d, t, s)
            elif d % 4 == 3:
                total += mobius(d) * F(params, n // d, t, t2s)
    count = exact_div(total, n)
    if count < 0:
        raise NegativeCount(f"P({n}, {t}, {s}) = {count}")
    return count


def lyndon_count(n: int, k_ones: int) -> int:
    """Binary Lyndon words of length n with exactly k_ones ones."""
    if n < 1 or not 0 <= k_ones <= n:
        raise ValueError("need n >= 1 and 0 <= k_ones <= n")
    g = math.gcd(n, k_ones)
    total = sum(mobius(d) * math.comb(n // d, k_ones // d) for d in divisors(g))
    return exact_div(total, n)


@dataclass(frozen=True)
class ResidueClassSpec:
    n: int
    trace_bit: int
    subtrace_bit: int
    residue: int


_RESIDUE_OFFSET = {(0, 0): 2, (0, 1): 0, (1, 0): -1, (1, 1): 1}


def residue_class(n: int, trace_bit: int, subtrace_bit: int) -> ResidueClassSpec:
    c = (2 * n + _RESIDUE_OFFSET[(trace_bit, subtrace_bit)]) % 4
    return ResidueClassSpec(n, trace_bit, subtrace_bit, c)


def cattell_gf2(n: int, trace_bit: int, subtrace_bit: int) -> int:
    """Binary irreducibles of degree n with given trace/subtrace bits, as a sum of Lyndon counts."""
    if n < 2:
        raise DegreeTooSmall("n must be >= 2")
    c = residue_class(n, trace_bit, subtrace_bit).residue
    return sum(lyndon_count(n, k) for k in range(n + 1) if k % 4 == c)


# Tables.


@dataclass
class CountTable:
    """Exact counts indexed by (t, s); ``counts[t, s]`` is a Python int."""

    params: FieldParams
    n: int
    kind: str
    counts: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        q = self.params.q
        if self.counts.shape != (q, q):
            raise ValueError(f"table must be {q}x{q}")
        if self.counts.dtype != object:
            self.counts = np.array(
                [[int(x) for x in row] for row in self.counts.tolist()], dtype=object
            ).reshape(q, q)

    def __getitem__(self, ts) -> int:
        t, s = ts
        return int(self.counts[_idx(t), _idx(s)])

    def total(self) -> int:
        return int(sum(int(x) for x in self.counts.flat))

    def first_mismatch(self, other: CountTable):
        """(t, s, self value, other value) at the first differing entry, or None."""
        diff = np.argwhere(self.counts != other.counts)
        if len(diff) == 0:
            return None
        t, s = (int(x) for x in diff[0])
        return t, s, self[t, s], other[t, s]

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        return (
            self.params == other.params
            and self.n == other.n
            and bool(np.all(self.counts == other.counts))
        )

    def entries(self):
        q = self.params.q
        for t in range(q):
            for s in range(q):
                yield t, s, int(self.counts[t, s])

    def to_dict(self) -> dict:
        return {
            "q": self.params.q,
            "k": self.params.k,
            "n": self.n,
            "kind": self.kind,
            "modulus": self.params.modulus,
            "entries": [{"t": t, "s": s, "count": str(c)} for t, s, c in self.entries()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> CountTable:
        params = fp_make(d["k"], d["modulus"])
        q = params.q
        counts = np.zeros((q, q), dtype=object)
        for e in d["entries"]:
            counts[e["t"], e["s"]] = int(e["count"])
        return cls(params, d["n"], d["kind"], counts)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "s", "count"])
        for row in self.entries():
            w.writerow(row)
        return buf.getvalue()

    def to_pretty(self, show: Callable[[int], str] = str) -> str:
        """Rows t, columns s, as in a printed table."""
        q = self.params.q
        labels = [show(i) for i in range(q)]
        cells = [[str(int(self.counts[t, s])) for s in range(q)] for t in range(q)]
        width = max(len(x) for x in labels + [c for row in cells for c in row] + ["t\\s"])
        lines = [" ".join(x.rjust(width) for x in ["t\\s"] + labels)]
        for t in range(q):
            lines.append(" ".join(x.rjust(width) for x in [labels[t]] + cells[t]))
        return "\n".join(lines)


def _filled(q: int, value: int) -> np.ndarray:
    return np.full((q, q), value, dtype=object)


def F_one_table(params: FieldParams) -> CountTable:
    counts = _filled(params.q, 0)
    counts[:, 0] = 1
    return CountTable(params, 1, "F", counts)


def _chi_over_square_rows(params: FieldParams) -> np.ndarray:
    """rows[t, s] = 1 where Tr(s / t^2) = 1 (row 0 unused)."""
    q = params.q
    _, _, tr = params.np_tables
    s = np.arange(q)
    t = np.arange(1, q)
    inv_t2 = np.array([params.inv(params.mul(x, x)) for x in t.tolist()], dtype=np.int64)
    out = np.zeros((q, q), dtype=bool)
    out[1:] = tr[params.mul_array(s[None, :], inv_t2[:, None])] == 1
    return out


def _closed_table(params: FieldParams, n: int, star: bool, flip: Collection[str] = ()) -> np.ndarray:
    q, k = params.q, params.k
    base = q ** (n - 2)
    counts = _filled(q, base)
    r = n % 4
    if r == 1:
        m = (n - 1) // 4
        c = _sign(m * k) * q ** (2 * m - 1)
        if not star and "4m+1" in flip:
            c = -c
        counts[:, :] = base - c
        counts[:, 0] = base + c * (q - 1)
    elif r == 3:
        m = (n + 1) // 4
        c = _sign(m * k) * q ** (2 * m - 2)
        if not star and "4m-1" in flip:
            c = -c
        counts[:, :] = base - c
        t = np.arange(q)
        counts[t, params.mul_array(t, t)] = base + c * (q - 1)
    elif r == 2:
        m = (n - 2) // 4
        c = _sign(m * k) * q ** (2 * m)
        if star:
            c = -c
        elif "4m+2" in flip:
            c = -c
        odd = _chi_over_square_rows(params)
        # value base - c * chi for t != 0
        counts[1:] = base - c
        counts[1:][odd[1:]] = base + c
        counts[0] = base
    else:
        m = n // 4
        c = _sign(m * k) * q ** (2 * m - 1)
        if star:
            c = -c
        elif "4m" in flip:
            c = -c
        counts[0, :] = base + c
        counts[0, 0] = base - c * (q - 1)
    return counts


def F_table(params: FieldParams, n: int, flip: Collection[str] = ()) -> CountTable:
    """Closed-form F for every (t, s); n = 1 gives the trivial table."""
    if n < 1:
        raise DegreeTooSmall("n must be >= 1")
    if n == 1:
        return F_one_table(params)
    return CountTable(params, n, "F", _closed_table(params, n, star=False, flip=flip))


def Fstar_table(params: FieldParams, n: int) -> CountTable:
    if n < 2:
        raise DegreeTooSmall("n must be >= 2")
    return CountTable(params, n, "Fstar", _closed_table(params, n, star=True))


def Fstar_recursive_table(params: FieldParams, n: int) -> CountTable:
    """Unrolls F*(n,t,s) = sum_a F*(n-1, t+a, s+a t+a^2) from the quadratic-root base case."""
    if n < 2:
        raise DegreeTooSmall("n must be >= 2")
    q = params.q
    _, _, tr = params.np_tables
    counts = _filled(q, 1)
    odd = _chi_over_square_rows(params)
    counts[1:] = 2
    counts[1:][odd[1:]] = 0
    T = np.arange(q)[:, None]
    S = np.arange(q)[None, :]
    for _ in range(3, n + 1):
        new = _filled(q, 0)
        for a in range(q):
            tt = T ^ a
            ss = S ^ params.mul_array(T, a) ^ params.mul(a, a)
            new += counts[tt, ss]
        counts = new
    return CountTable(params, n, "Fstar", counts)


def P_table(params: FieldParams, n: int, F: Callable = F_table) -> CountTable:
    """Irreducible counts for every (t, s) via the Mobius relation with F.

    ``F(params, m)`` must return the F table at degree m.
    """
    if n < 2:
        raise DegreeTooSmall("n must be >= 2")
    q = params.q
    total = _filled(q, 0)
    t = np.arange(1, q)
    t2 = params.mul_array(t, t)
    cols = np.arange(q)
    for d in divisors(n):
        if d % 2 == 0:
            continue
        mu = mobius(d)
        if mu == 0:
            continue
        Fd = F(params, n // d).counts
        row0 = Fd[0].copy()
        if n % 2 == 0:
            row0 = row0 - q ** (n // (2 * d) - 1)
        total[0] += mu * row0
        if d % 4 == 1:
            total[1:] += mu * Fd[1:]
        else:
            total[1:] += mu * Fd[t[:, None], cols[None, :] ^ t2[:, None]]
    if np.any(total % n != 0):
        t0, s0 = (int(x) for x in np.argwhere(total % n != 0)[0])
        raise InexactDivision(f"n P({n}, {t0}, {s0}) = {total[t0, s0]} is not divisible by {n}")
    out = total // n
    if np.any(out < 0):
        t0, s0 = (int(x) for x in np.argwhere(out < 0)[0])
        raise NegativeCount(f"P({n}, {t0}, {s0}) = {out[t0, s0]}")
    return CountTable(params, n, "P", out)


def count_table(kind: str, params: FieldParams, n: int) -> CountTable:
    if kind == "F":
        return F_table(params, n)
    if kind == "Fstar":
        return Fstar_table(params, n)
    if kind == "P":
        return P_table(params, n)
    raise ValueError(f"unknown kind {kind!r}")
