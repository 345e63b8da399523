import pytest

from conftest import full_only
from gradcon.catalogue import listed_gns
from gradcon.contraction import contract_gns
from gradcon.fano import I
from gradcon.gns import S_SETS, X0, Y_SETS, parse_gns
from gradcon.structure import (
    GradedSubspace, analyse, bracket, compare_with_expected, expected_structure, fingerprint,
    is_semisimple_subalgebra, verify_levi,
)
from gradcon.tits import distinguished_subalgebra, tits


def _check_all(c):
    L = tits(c)
    bad = []
    for label, T in listed_gns():
        C = contract_gns(L, T)
        res = compare_with_expected(analyse(C), expected_structure(C, label))
        if not all(res.values()):
            bad.append((label, [k for k, v in res.items() if not v]))
    return bad


def test_block_formulas_f():
    assert _check_all("F") == []


@full_only
@pytest.mark.parametrize("c", "KHO")
def test_block_formulas_large(c):
    assert _check_all(c) == []


def test_uncontracted_is_simple():
    R = analyse(contract_gns(tits("F"), X0))
    assert R.center.dim == 0 and R.radical.dim == 0 and R.levi_dim == 52 and R.reductive


def test_s0_is_abelian():
    R = analyse(contract_gns(tits("F"), S_SETS[0]))
    assert R.derived.dim == 0 and R.center.dim == 52


def test_e_i_center():
    L = tits("F")
    R = analyse(contract_gns(L, parse_gns("E_I")))
    # der(J) plus the whole der(O) part
    assert R.center.dim == len(L.blocks[0]) + 14
    assert R.derived.dim == len(L.blocks[0])


def test_f_i_on_h():
    L = tits("H")
    R = analyse(contract_gns(L, parse_gns("F_I")))
    assert R.levi_dim == 21 and R.radical.dim == 112 and not R.reductive


def test_s13_lower_central_series_f():
    L = tits("F")
    lt = len(L.blocks[1])
    R = analyse(contract_gns(L, S_SETS[13]))
    assert tuple(S.dim for S in R.lower_central_series) == (52, 4 * lt, lt, 0)


def test_y19_radical_derived_series():
    L = tits("F")
    lt = len(L.blocks[1])
    R = analyse(contract_gns(L, Y_SETS[19]))
    assert tuple(S.dim for S in R.radical_derived_series) == (6 * lt + 2, 6 * lt, 2 * lt, 0)


def test_y10_levi_is_the_line_block_union():
    L = tits("F")
    C = contract_gns(L, Y_SETS[10])
    R = analyse(C)
    U = distinguished_subalgebra(L, "line_blocks", (1, 2, 5))
    assert R.levi_dim == U.dim == 24 and R.reductive
    assert verify_levi(C, GradedSubspace.from_global(C, U), R.radical)


@full_only
def test_y10_on_o_has_levi_136():
    L = tits("O")
    C = contract_gns(L, Y_SETS[10])
    R = analyse(C)
    assert R.levi_dim == 136 and R.reductive
    # the tkk part (133) is not all of it: a commuting sl2 sits in the x-derivations
    tkk = distinguished_subalgebra(L, "tkk", (1, 2, 5))
    assert tkk.dim == 133 and is_semisimple_subalgebra(L, tkk)


def test_bracket_of_blocks():
    L = tits("F")
    A = GradedSubspace.coordinate(L, L.blocks[1])
    B = GradedSubspace.coordinate(L, L.blocks[2])
    img = bracket(L, A, B)
    assert img.dims[5] == len(L.blocks[5]) and img.dim == len(L.blocks[5])


def test_fingerprint_fields():
    fp = fingerprint("F", S_SETS[1])
    assert fp.dim == 52 and fp.radical_dim == 52 and fp.levi_dim == 0
    assert fp.size_in_x + fp.size_diagonal + fp.has_00 <= 36
    d = fp.as_dict()
    assert d["algebra"] == "F"
