import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrcount import counting
from irrcount.counting import (
    CountTable,
    F_closed,
    F_dispatch,
    F_one,
    F_table,
    Fstar_closed,
    Fstar_recursive,
    Fstar_recursive_table,
    Fstar_table,
    P_count,
    P_table,
    cattell_gf2,
    classical_count,
    classical_count_trace_nonzero,
    lyndon_count,
    mobius,
)
from irrcount.errors import DegreeTooSmall, InexactDivision
from irrcount.gf2k import fp_make

GF2 = fp_make(1)
GF4 = fp_make(2)
A, A2 = 2, 3  # alpha and alpha^2 in GF(4)

TABLE1 = [[7, 3, 3, 3], [3, 7, 3, 3], [3, 3, 3, 7], [3, 3, 7, 3]]
TABLE2 = [[2, 1, 1, 1], [1, 2, 1, 1], [1, 1, 1, 2], [1, 1, 2, 1]]


def test_mobius_examples():
    assert [mobius(d) for d in (1, 2, 3, 4, 5, 6, 12, 30)] == [1, -1, -1, 0, -1, 1, 0, -1]


def _mobius_brute(n):
    f, p, out = n, 2, 1
    while p <= f:
        if f % p == 0:
            f //= p
            if f % p == 0:
                return 0
            out = -out
        p += 1
    return out


def test_mobius_matches_brute():
    assert all(mobius(n) == _mobius_brute(n) for n in range(1, 500))


def test_classical_examples():
    assert classical_count(GF2, 3) == 2
    assert classical_count(GF2, 4) == 3
    assert classical_count_trace_nonzero(GF2, 2) == 1
    assert classical_count(GF4, 2) == 6


def test_F_one_examples():
    assert F_one(GF4, 0, 0) == 1
    assert F_one(GF4, A, 0) == 1
    assert all(F_one(GF4, t, s) == 0 for t in range(4) for s in range(1, 4))


def test_table1_and_table2():
    assert F_table(GF4, 3).counts.tolist() == TABLE1
    assert P_table(GF4, 3).counts.tolist() == TABLE2
    assert [[F_closed(GF4, 3, t, s) for s in range(4)] for t in range(4)] == TABLE1
    assert [[P_count(GF4, 3, t, s) for s in range(4)] for t in range(4)] == TABLE2


def test_F_examples():
    assert F_closed(GF4, 3, 0, 0) == 7
    assert F_closed(GF4, 3, A, 1) == 3
    assert F_closed(GF2, 4, 0, 0) == 6
    assert F_closed(GF2, 2, 1, 1) == 2
    assert F_dispatch(GF4, 1, A, 0) == 1
    assert F_dispatch(GF4, 3, 1, 1) == 7


def test_Fstar_examples():
    assert Fstar_closed(GF2, 2, 0, 0) == 1
    assert Fstar_closed(GF2, 2, 1, 0) == 2
    assert Fstar_closed(GF4, 3, 0, 0) == 7
    assert Fstar_recursive(GF2, 2, 1, 1) == 0
    assert sum(Fstar_recursive(GF2, 3, t, s) for t in (0, 1) for s in (0, 1)) == 8
    q4 = fp_make(2)
    for t, s in itertools.product(range(4), repeat=2):
        assert Fstar_recursive(q4, 5, t, s) == Fstar_closed(q4, 5, t, s)


def test_P_examples():
    assert P_count(GF4, 3, 0, 0) == 2
    assert P_count(GF4, 3, A2, A) == 2
    assert P_count(GF2, 4, 0, 1) == 0
    assert P_count(GF2, 4, 1, 1) == 1


def test_lyndon_examples():
    assert lyndon_count(4, 2) == 1
    assert lyndon_count(5, 2) == 2
    assert all(lyndon_count(n, 0) == 0 for n in range(2, 12))
    assert lyndon_count(1, 0) == lyndon_count(1, 1) == 1


def _lyndon_brute(n, k):
    count = 0
    for bits in itertools.combinations(range(n), k):
        w = [0] * n
        for b in bits:
            w[b] = 1
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            count += 1
    return count


@pytest.mark.parametrize("n", range(1, 15))
def test_lyndon_matches_brute_force(n):
    for k in range(n + 1):
        assert lyndon_count(n, k) == _lyndon_brute(n, k)


def test_gf2_lyndon_examples():
    assert cattell_gf2(4, 0, 0) == 1
    assert cattell_gf2(4, 1, 1) == 1
    assert cattell_gf2(3, 1, 0) == 1
    assert counting.residue_class(4, 0, 0).residue == 2


@pytest.mark.parametrize("n", range(2, 21))
def test_gf2_lyndon_sums_match_P(n):
    P = P_table(GF2, n)
    for t, s in itertools.product((0, 1), repeat=2):
        assert P[t, s] == cattell_gf2(n, t, s)
    assert P.total() == classical_count(GF2, n)


# Scalar and vectorised forms agree.
GRID = [(k, n) for k in range(1, 6) for n in range(2, 13)]


@pytest.mark.parametrize("k,n", GRID)
def test_scalar_and_table_forms_agree(k, n):
    p = fp_make(k)
    F, Fs, P = F_table(p, n), Fstar_table(p, n), P_table(p, n)
    for t, s in itertools.product(range(p.q), repeat=2):
        assert F[t, s] == F_dispatch(p, n, t, s)
        assert Fs[t, s] == Fstar_closed(p, n, t, s)
        assert P[t, s] == P_count(p, n, t, s)


@pytest.mark.parametrize("k,n", [(k, n) for k in range(1, 5) for n in range(2, 9)])
def test_recursion_matches_closed_form(k, n):
    p = fp_make(k)
    assert Fstar_recursive_table(p, n) == Fstar_table(p, n)
    for t, s in itertools.product(range(p.q), repeat=2):
        assert Fstar_recursive(p, n, t, s) == Fstar_closed(p, n, t, s)


@pytest.mark.parametrize("k,n", GRID)
def test_identities(k, n):
    p = fp_make(k)
    q = p.q
    F, Fs, P = F_table(p, n), Fstar_table(p, n), P_table(p, n)
    assert F.total() == Fs.total() == q**n
    assert P.total() == classical_count(p, n)
    for t in range(1, q):
        assert sum(P[t, s] for s in range(q)) == classical_count_trace_nonzero(p, n)
    if n % 2:
        assert F == Fs
    for table in (F, Fs, P):
        assert min(table.counts.flat) >= 0


def test_P_exact_division_guard():
    def bad_F(params, m):
        t = F_table(params, m)
        if m == 3:
            t.counts[0, 0] += 1
        return t

    with pytest.raises(InexactDivision):
        P_table(GF2, 3, F=bad_F)


def test_degree_guards():
    with pytest.raises(DegreeTooSmall):
        P_table(GF2, 1)
    with pytest.raises(DegreeTooSmall):
        Fstar_table(GF2, 1)


def test_flip_changes_every_branch():
    for n, branch in [(5, "4m+1"), (3, "4m-1"), (2, "4m+2"), (4, "4m")]:
        assert F_table(GF2, n, flip={branch}) != F_table(GF2, n)
        others = set(counting.BRANCHES) - {branch}
        assert F_table(GF2, n, flip=others) == F_table(GF2, n)


def test_large_counts_are_exact():
    p = fp_make(16)
    v = P_count(p, 40, 0, 0)
    assert isinstance(v, int) and v > 2**500
    assert P_count(p, 40, 1, 0) * 40 > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 16), st.integers(2, 30), st.data())
def test_scaling_symmetry(k, n, data):
    p = fp_make(k)
    t = data.draw(st.integers(0, p.q - 1))
    s = data.draw(st.integers(0, p.q - 1))
    c = data.draw(st.integers(1, p.q - 1))
    ct, c2s = p.mul(c, t), p.mul(p.mul(c, c), s)
    assert P_count(p, n, ct, c2s) == P_count(p, n, t, s)
    assert F_dispatch(p, n, ct, c2s) == F_dispatch(p, n, t, s)
    assert P_count(p, n, t, s) >= 0


def test_json_and_csv_roundtrip():
    for kind, table in [("F", F_table(GF4, 3)), ("P", P_table(fp_make(3), 5))]:
        d = json.loads(table.to_json())
        assert d["kind"] == kind
        assert CountTable.from_dict(d) == table
        lines = table.to_csv().splitlines()
        assert lines[0] == "t,s,count"
        assert len(lines) == 1 + table.params.q**2


def test_csv_example():
    rows = P_table(GF2, 4).to_csv().splitlines()[1:]
    assert rows == ["0,0,1", "0,1,0", "1,0,1", "1,1,1"]


def test_first_mismatch_witness():
    a = F_table(GF4, 3)
    b = CountTable(GF4, 3, "F", a.counts.copy())
    assert a.first_mismatch(b) is None
    b.counts[2, 1] = 99
    assert a.first_mismatch(b) == (2, 1, 3, 99)


def test_count_table_validation():
    with pytest.raises(ValueError):
        CountTable(GF4, 3, "Q", np.zeros((4, 4), dtype=object))
    with pytest.raises(ValueError):
        CountTable(GF4, 3, "F", np.zeros((2, 2), dtype=object))
