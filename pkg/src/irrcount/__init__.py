"""Exact counts of irreducible polynomials over GF(2^k) with prescribed trace and subtrace."""

from .counting import (
    CountTable,
    F_closed,
    F_dispatch,
    F_table,
    Fstar_closed,
    Fstar_recursive,
    Fstar_table,
    P_count,
    P_table,
    cattell_gf2,
    classical_count,
    classical_count_trace_nonzero,
    lyndon_count,
    mobius,
)
from .extfield import ExtElement, ExtFieldParams, ext_make
from .gf2k import FieldElement, FieldParams, fp_make
from .oracle import Budget, VerifyReport, oracle_F, oracle_Fstar, oracle_P, verify_grid
from .polyring import Poly, enumerate_monic_irreducibles, is_irreducible, minimal_polynomial

__version__ = "0.1.0"
