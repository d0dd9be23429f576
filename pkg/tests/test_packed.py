import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrcount.extfield import ext_make
from irrcount.gf2k import fp_make
from irrcount.packed import PackedExt, SlotOps, pack, poly_mul_packed, unpack
from irrcount.polyring import Poly, pmod, pmul

# (k, n) pairs spanning k = 1 (alpha reduces to 0) through wide slots
CASES = [(1, 5), (1, 13), (2, 3), (3, 4), (4, 3), (5, 2), (8, 2), (16, 3)]


def _ext(k, n):
    base = fp_make(k)
    return base, ext_make(base, n).modulus


def test_pack_roundtrip():
    assert unpack(pack([3, 0, 2, 1], 2), 2, 4) == [3, 0, 2, 1]
    assert pack([1, 1], 1) == 0b11


@pytest.mark.parametrize("k,n", CASES)
def test_packed_mul_matches_polynomial_product(k, n):
    base, f = _ext(k, n)
    pk = PackedExt(base, f.coeffs)
    rng = np.random.default_rng(17 * k + n)
    for _ in range(40):
        a = [int(x) for x in rng.integers(0, base.q, n)]
        b = [int(x) for x in rng.integers(0, base.q, n)]
        want = pmod(pmul(Poly(tuple(a), base), Poly(tuple(b), base)), f)
        got = unpack(pk.mul(pack(a, k), pack(b, k)), k, n)
        assert Poly(tuple(got), base) == want


@pytest.mark.parametrize("k,n", CASES)
def test_numpy_path_matches_int_path(k, n):
    base, f = _ext(k, n)
    pk = PackedExt(base, f.coeffs)
    rng = np.random.default_rng(k * n)
    a = rng.integers(0, pk.size, 64, dtype=np.uint64)
    b = rng.integers(0, pk.size, 64, dtype=np.uint64)
    got = pk.mul(a, b).tolist()
    assert got == [pk.mul(int(x), int(y)) for x, y in zip(a.tolist(), b.tolist())]
    fr = pk.frobenius(a).tolist()
    assert fr == [pk.pow(int(x), base.q) for x in a.tolist()]


@pytest.mark.parametrize("k", range(1, 17))
def test_slot_scale_matches_scalar(k):
    base = fp_make(k)
    slots = 64 // k
    ops = SlotOps(base, slots)
    rng = np.random.default_rng(k)
    v = [int(x) for x in rng.integers(0, base.q, slots)]
    for c in [0, 1, base.q - 1, int(rng.integers(0, base.q))]:
        assert unpack(ops.scale(c, pack(v, k)), k, slots) == [base.mul(c, x) for x in v]


def test_slot_width_limit():
    with pytest.raises(ValueError):
        SlotOps(fp_make(16), 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.data())
def test_poly_mul_packed_matches_pmul(k, data):
    base = fp_make(k)
    df = data.draw(st.integers(1, 3))
    dg = data.draw(st.integers(1, max(1, 64 // k - df - 1)))
    dg = min(dg, 6)
    f = [data.draw(st.integers(0, base.q - 1)) for _ in range(df)] + [1]
    g = [data.draw(st.integers(0, base.q - 1)) for _ in range(dg)] + [1]
    got = poly_mul_packed(f, pack(g, k), base, len(g))
    want = pmul(Poly(tuple(f), base), Poly(tuple(g), base))
    assert Poly(tuple(unpack(got, k, df + dg + 1)), base) == want
