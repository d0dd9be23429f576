import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrcount import gf2k
from irrcount.errors import ParamsMismatch, ReducibleModulus, UnsupportedDegree
from irrcount.gf2k import (
    DEFAULT_MODULI,
    FieldElement,
    add,
    binary_is_irreducible,
    canonical_character,
    elements,
    fp_make,
    inv,
    mul,
    sqrt,
    trace_sum,
    trace_to_gf2,
    v_weight,
)

GF2 = fp_make(1)
GF4 = fp_make(2)
GF8 = fp_make(3)


def e(params, bits):
    return FieldElement(bits, params)


def test_default_moduli_are_least_irreducibles():
    for k in range(1, 17):
        first = next(f for f in range(1 << k, 1 << (k + 1)) if binary_is_irreducible(f))
        assert DEFAULT_MODULI[k] == first


def test_fp_make_examples():
    assert GF2.q == 2 and GF2.modulus == 0b10
    assert GF4.modulus == 0b111
    with pytest.raises(ReducibleModulus):
        fp_make(2, 0b101)
    with pytest.raises(ReducibleModulus):
        fp_make(3, 0b111)
    with pytest.raises(UnsupportedDegree):
        fp_make(0)
    with pytest.raises(UnsupportedDegree):
        fp_make(17)


def test_gf4_examples():
    a, a2 = e(GF4, 0b10), e(GF4, 0b11)
    assert add(a, a2) == e(GF4, 1)
    assert mul(a, a) == a2
    assert trace_to_gf2(a) == 1
    assert canonical_character(a) == -1
    assert sqrt(a) == a2
    assert v_weight(e(GF4, 0)) == 3
    assert v_weight(a) == -1
    assert [x.bits for x in elements(GF4)] == [0, 1, 2, 3]


def test_gf2_examples():
    assert trace_to_gf2(e(GF2, 1)) == 1
    assert canonical_character(e(GF2, 1)) == -1
    assert canonical_character(e(GF2, 0)) == 1
    assert v_weight(e(GF2, 0)) == 1
    assert [x.bits for x in elements(GF2)] == [0, 1]


def test_sqrt_gf8_exhaustive():
    for a in elements(GF8):
        assert sqrt(a) ** 2 == a


def test_params_mismatch():
    with pytest.raises(ParamsMismatch):
        e(GF4, 1) + e(GF8, 1)
    other = fp_make(3, 0b1101)
    with pytest.raises(ParamsMismatch):
        e(GF8, 1) * e(other, 1)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        inv(e(GF4, 0))


def test_element_range():
    with pytest.raises(ValueError):
        e(GF4, 4)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_field_axioms_exhaustive(k):
    p = fp_make(k)
    els = list(elements(p))
    zero, one = e(p, 0), e(p, 1)
    for a in els:
        assert a * zero == zero
        assert a * one == a
        assert a + a == zero
        if a.bits:
            assert a * inv(a) == one
            assert a / a == one
    for a, b in itertools.product(els, repeat=2):
        assert a * b == b * a
        assert (a + b) ** 2 == a**2 + b**2
    for a, b, c in itertools.product(els, repeat=3):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("k", range(1, 17))
def test_tables_match_reference(k):
    p = fp_make(k)
    rng = np.random.default_rng(k)
    xs = rng.integers(0, p.q, size=(300, 2))
    for a, b in xs.tolist():
        assert p.mul(a, b) == p.mul_ref(a, b)
    got = p.mul_array(xs[:, 0], xs[:, 1])
    assert got.tolist() == [p.mul_ref(a, b) for a, b in xs.tolist()]


@pytest.mark.parametrize("k", range(1, 17))
def test_trace_mask_matches_defining_sum(k):
    p = fp_make(k)
    for a in {0, 1, p.q - 1} | {1 << i for i in range(k)} | set(range(0, p.q, max(1, p.q // 64))):
        assert p.tr(a) == trace_sum(p, a)


@pytest.mark.parametrize("k", range(1, 11))
def test_trace_is_balanced_and_v_sums_to_zero(k):
    p = fp_make(k)
    ones = sum(p.tr(a) for a in range(p.q))
    assert ones == p.q // 2
    assert sum(v_weight(x) for x in elements(p)) == 0
    assert sum(canonical_character(x) for x in elements(p)) == 0


@pytest.mark.parametrize("k", range(1, 13))
def test_sqrt_is_a_bijection(k):
    p = fp_make(k)
    roots = {p.sqrt(a) for a in range(p.q)}
    assert len(roots) == p.q
    assert all(p.mul(p.sqrt(a), p.sqrt(a)) == a for a in range(0, p.q, max(1, p.q // 512)))


def test_non_default_modulus():
    p = fp_make(8, 0x11D)
    for a in range(0, 256, 7):
        for b in range(0, 256, 11):
            assert p.mul(a, b) == p.mul_ref(a, b)


elements_k16 = st.integers(0, (1 << 16) - 1)
ks = st.integers(1, 16)


@settings(max_examples=200, deadline=None)
@given(ks, st.data())
def test_field_axioms_sampled(k, data):
    p = fp_make(k)
    a, b, c = (e(p, data.draw(st.integers(0, p.q - 1))) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) ** 2 == a**2 + b**2
    assert trace_to_gf2(a + b) == trace_to_gf2(a) ^ trace_to_gf2(b)
    assert trace_to_gf2(a**2) == trace_to_gf2(a)
    assert canonical_character(a + b) == canonical_character(a) * canonical_character(b)
    if a.bits:
        assert a * a.inverse() == e(p, 1)
        assert a ** (p.q - 1) == e(p, 1)


@settings(max_examples=100, deadline=None)
@given(elements_k16, st.integers(0, 1 << 12))
def test_pow_matches_reference_k16(a, n):
    p = fp_make(16)
    assert p.pow(a, n) == p.pow_ref(a, n)


def test_element_pretty():
    assert gf2k.element_pretty(0) == "0"
    assert gf2k.element_pretty(1) == "1"
    assert gf2k.element_pretty(0b110) == "a^2+a"
