"""Brute-force ground truth for the closed forms, and the verification grid.

The sweeps here never call into ``counting``'s closed forms: F comes from
summing Frobenius conjugates of every element of GF(q^n), F* from every
n-tuple over GF(q), and P from sieving all monic degree-n polynomials.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import counting, extfield
from .errors import BudgetExceeded
from .extfield import ExtElement, ExtFieldParams, ext_make
from .gf2k import FieldParams, MAX_K, fp_make
from .packed import PackedExt
from .polyring import irreducible_codes

DEFAULT_MAX_POINTS = 1 << 20
DEFAULT_MAX_POLY = 1 << 22
# a dense (t, s) table has q^2 entries
MAX_TABLE = 1 << 22
CHUNK = 1 << 16


@dataclass(frozen=True)
class Budget:
    max_points: int = DEFAULT_MAX_POINTS
    max_poly: int = DEFAULT_MAX_POLY
    time_cap: float | None = None
    threads: int = 1

    def __post_init__(self):
        if self.max_points < 1 or self.max_poly < 1 or self.threads < 1:
            raise ValueError("budget caps must be positive")
        if self.time_cap is not None and self.time_cap <= 0:
            raise ValueError("time_cap must be positive")


def _ranges(size: int, chunk: int = CHUNK):
    return [(lo, min(lo + chunk, size)) for lo in range(0, size, chunk)]


def _merge(fn, size: int, threads: int) -> np.ndarray:
    """Apply ``fn(lo, hi)`` over contiguous ranges and add the tallies in range order."""
    ranges = _ranges(size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda r: fn(*r), ranges))
    else:
        parts = [fn(lo, hi) for lo, hi in ranges]
    total = parts[0].copy()
    for p in parts[1:]:
        total += p
    return total


def _as_table(params: FieldParams, n: int, kind: str, tally: np.ndarray) -> counting.CountTable:
    q = params.q
    counts = np.array([int(x) for x in tally.tolist()], dtype=object).reshape(q, q)
    return counting.CountTable(params, n, kind, counts)


def _check_points(params: FieldParams, n: int, budget: Budget):
    if params.q**n > budget.max_points:
        raise BudgetExceeded(f"q^n = {params.q}^{n} exceeds max_points={budget.max_points}")
    if params.q**2 > MAX_TABLE:
        raise BudgetExceeded(f"a GF({params.q}) table has more than {MAX_TABLE} entries")


def oracle_F(
    params: FieldParams, n: int, budget: Budget = Budget(), ext: ExtFieldParams | None = None
) -> counting.CountTable:
    """Tally (Tr, St) over every element of GF(q^n) from its conjugates."""
    _check_points(params, n, budget)
    ext = ext or ext_make(params, n)
    pk = PackedExt(params, ext.modulus.coeffs)
    q, k = params.q, params.k
    frob = pk.frobenius_table() if n > 1 else None

    def sweep(lo: int, hi: int) -> np.ndarray:
        c = np.arange(lo, hi, dtype=np.uint64)
        s_acc = c.copy()
        e2 = np.zeros_like(c)
        for _ in range(n - 1):
            c = frob[c.astype(np.int64)]
            e2 ^= pk.mul(s_acc, c)
            s_acc ^= c
        assert not np.any(s_acc >> np.uint64(k)), "trace left GF(q)"
        assert not np.any(e2 >> np.uint64(k)), "subtrace left GF(q)"
        key = (s_acc * np.uint64(q) + e2).astype(np.int64)
        return np.bincount(key, minlength=q * q).astype(np.int64)

    tally = _merge(sweep, q**n, budget.threads)
    return _as_table(params, n, "F", tally)


def oracle_Fstar(params: FieldParams, n: int, budget: Budget = Budget()) -> counting.CountTable:
    """Tally (sum, pairwise-product sum) over every n-tuple in GF(q)^n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_points(params, n, budget)
    q, k = params.q, params.k

    def sweep(lo: int, hi: int) -> np.ndarray:
        idx = np.arange(lo, hi, dtype=np.int64)
        total = np.zeros_like(idx)
        e2 = np.zeros_like(idx)
        for i in range(n):
            a = (idx >> (i * k)) & (q - 1)
            e2 ^= params.mul_array(total, a)
            total ^= a
        return np.bincount(total * q + e2, minlength=q * q).astype(np.int64)

    tally = _merge(sweep, q**n, budget.threads)
    return _as_table(params, n, "Fstar", tally)


def oracle_P(params: FieldParams, n: int, budget: Budget = Budget()) -> counting.CountTable:
    """Tally (trace, subtrace) coefficients of the sieved monic irreducibles."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if params.q**2 > MAX_TABLE:
        raise BudgetExceeded(f"a GF({params.q}) table has more than {MAX_TABLE} entries")
    q, k = params.q, params.k
    codes = irreducible_codes(params, n, budget.max_poly)
    t = (codes >> np.uint64((n - 1) * k)) & np.uint64(q - 1)
    s = (codes >> np.uint64((n - 2) * k)) & np.uint64(q - 1)
    tally = np.bincount((t * np.uint64(q) + s).astype(np.int64), minlength=q * q)
    return _as_table(params, n, "P", tally)


# Verification grid.


@dataclass
class Check:
    name: str
    q: int
    n: int
    status: str
    detail: dict = field(default_factory=dict)


@dataclass
class VerifyReport:
    grid: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def totals(self) -> dict:
        passed = sum(c.status == "pass" for c in self.checks)
        return {"pass": passed, "fail": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return self.totals["fail"] == 0

    def add(self, name: str, q: int, n: int, ok: bool, **detail):
        self.checks.append(Check(name, q, n, "pass" if ok else "fail", detail))
        if [q, n] not in self.grid:
            self.grid.append([q, n])

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "checks": [asdict(c) for c in self.checks],
            "totals": self.totals,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _compare(report: VerifyReport, name: str, params: FieldParams, n: int, expected, got):
    miss = expected.first_mismatch(got)
    if miss is None:
        report.add(name, params.q, n, True)
    else:
        t, s, e, g = miss
        report.add(name, params.q, n, False, t=t, s=s, expected=str(e), got=str(g))


def grid_pairs(max_k: int, limit: int, n_min: int = 1):
    """(k, n) with q^n <= limit and a table of at most MAX_TABLE entries."""
    out = []
    for k in range(1, min(max_k, MAX_K) + 1):
        if (1 << (2 * k)) > MAX_TABLE:
            break
        n = n_min
        while k * n <= limit.bit_length() - 1:
            out.append((k, n))
            n += 1
    return out


def check_F(report, budget, max_k=MAX_K, F_table: Callable = counting.F_table):
    for k, n in grid_pairs(max_k, budget.max_points):
        params = fp_make(k)
        _compare(report, "F_closed=oracle_F", params, n, F_table(params, n), oracle_F(params, n, budget))


def check_Fstar(report, budget, max_k=MAX_K, limit=1 << 16):
    for k, n in grid_pairs(max_k, min(limit, budget.max_points), n_min=2):
        params = fp_make(k)
        closed = counting.Fstar_table(params, n)
        _compare(report, "Fstar_closed=oracle_Fstar", params, n, closed, oracle_Fstar(params, n, budget))
        if params.q ** 3 * n <= 1 << 24:
            _compare(report, "Fstar_closed=Fstar_recursive", params, n, closed,
                     counting.Fstar_recursive_table(params, n))


def check_P(report, budget, max_k=MAX_K, F_table: Callable = counting.F_table):
    for k, n in grid_pairs(max_k, budget.max_poly, n_min=2):
        params = fp_make(k)
        closed = counting.P_table(params, n, F=F_table)
        _compare(report, "P_count=oracle_P", params, n, closed, oracle_P(params, n, budget))


def check_identities(report, max_k=MAX_K, limit=1 << 20):
    """Sum rules, scaling symmetry, odd-n F = F*, exact divisions."""
    for k, n in grid_pairs(max_k, limit, n_min=2):
        params = fp_make(k)
        q = params.q
        F = counting.F_table(params, n)
        Fs = counting.Fstar_table(params, n)
        report.add("sum F = q^n", q, n, F.total() == q**n)
        report.add("sum Fstar = q^n", q, n, Fs.total() == q**n)
        if n % 2:
            _compare(report, "odd n: F = Fstar", params, n, F, Fs)
        try:
            P = counting.P_table(params, n)
            cc = counting.classical_count(params, n)
            cc1 = counting.classical_count_trace_nonzero(params, n)
        except ArithmeticError as exc:
            report.add("exact divisions", q, n, False, error=repr(exc))
            continue
        report.add("sum P = classical_count", q, n, P.total() == cc, got=str(P.total()), want=str(cc))
        rows = all(sum(int(x) for x in P.counts[t]) == cc1 for t in range(1, q))
        report.add("row sums P = trace-nonzero count", q, n, rows)
        report.add("scaling P(ct, c^2 s) = P(t, s)", q, n, _scaling_ok(params, P))


def _scaling_ok(params: FieldParams, P) -> bool:
    q = params.q
    ts = np.arange(q)
    counts = P.counts
    if max(counts.flat) < 1 << 62:
        counts = counts.astype(np.int64)
    for c in range(2, q):
        ct = params.mul_array(ts, c)
        c2s = params.mul_array(ts, params.mul(c, c))
        if not np.array_equal(counts[ct[:, None], c2s[None, :]], counts):
            return False
    return True


def check_cattell(report, n_max: int = 20):
    params = fp_make(1)
    for n in range(2, n_max + 1):
        P = counting.P_table(params, n)
        ok = all(P[t, s] == counting.cattell_gf2(n, t, s) for t in (0, 1) for s in (0, 1))
        report.add("GF(2): P_count = Lyndon residue sums", 2, n, ok)
        report.add("GF(2): sum P = classical_count", 2, n, P.total() == counting.classical_count(params, n))


def check_lemmas(report, max_k=MAX_K, lemma1_limit=1 << 12, basis_limit=1 << 10):
    """Subtrace via traces of beta^(q^i+1); self-dual normal basis identities."""
    for k, n in grid_pairs(max_k, lemma1_limit, n_min=2):
        params = fp_make(k)
        ext = ext_make(params, n)
        ok = all(
            extfield.subtrace(b) == extfield.subtrace_lemma1(b) for b in extfield.ext_elements(ext)
        )
        report.add("subtrace = trace-sum form", params.q, n, ok)
    for k, n in grid_pairs(max_k, basis_limit, n_min=1):
        params = fp_make(k)
        ext = ext_make(params, n)
        theta = extfield.find_self_dual_normal_basis(ext, basis_limit)
        report.add("self-dual normal basis exists iff 4 does not divide n", params.q, n,
                   (theta is not None) == (n % 4 != 0))
        if theta is None:
            continue
        report.add("self-dual basis: Tr(theta) = 1", params.q, n, extfield.trace(theta).bits == 1)
        eps = extfield.epsilon_of_basis(theta) if n % 4 == 2 else None
        if eps is not None:
            report.add("epsilon has absolute trace 1", params.q, n, params.tr(eps.bits) == 1)
        report.add("normal-basis coordinate identities", params.q, n,
                   _basis_identities_ok(ext, theta, eps))
        if eps is not None:
            report.add("F(n,t,s) = F*(n,t,s+eps t^2)", params.q, n, _shift_ok(params, n, eps.bits))


def _basis_identities_ok(ext: ExtFieldParams, theta: ExtElement, eps) -> bool:
    base = ext.base
    n = ext.n
    for beta in extfield.ext_elements(ext):
        a = extfield.normal_coordinates(beta, theta)
        t = 0
        e2 = 0
        for x in a:
            e2 ^= base.mul(t, x)
            t ^= x
        if extfield.trace(beta).bits != t:
            return False
        if n < 2:
            continue
        st = extfield.subtrace(beta).bits
        if n % 2 == 1 and st != e2:
            return False
        if n % 4 == 2 and st != e2 ^ base.mul(eps.bits, base.mul(t, t)):
            return False
    return True


def _shift_ok(params: FieldParams, n: int, eps: int) -> bool:
    q = params.q
    for t in range(q):
        shift = params.mul(eps, params.mul(t, t))
        for s in range(q):
            if counting.F_closed(params, n, t, s) != counting.Fstar_closed(params, n, t, s ^ shift):
                return False
    return True


def verify_grid(max_k: int = MAX_K, budget: Budget = Budget(), F_table: Callable = counting.F_table,
                parts=("F", "Fstar", "P", "cattell", "identities", "lemmas")) -> VerifyReport:
    """Run every oracle comparison admitted by ``budget``; failures become report entries."""
    report = VerifyReport()
    start = time.perf_counter()
    steps = {
        "F": lambda: check_F(report, budget, max_k, F_table),
        "Fstar": lambda: check_Fstar(report, budget, max_k),
        "P": lambda: check_P(report, budget, max_k),
        "cattell": lambda: check_cattell(report),
        "identities": lambda: check_identities(report, max_k, budget.max_points),
        "lemmas": lambda: check_lemmas(report, max_k,
                                       min(1 << 12, budget.max_points), min(1 << 10, budget.max_points)),
    }
    for name in parts:
        if budget.time_cap is not None and time.perf_counter() - start > budget.time_cap:
            report.add(f"time cap reached before {name}", 0, 0, False)
            break
        steps[name]()
    report.elapsed = time.perf_counter() - start
    return report
