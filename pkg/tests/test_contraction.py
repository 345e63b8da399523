import random

import pytest

from gradcon.catalogue import listed_gns
from gradcon.contraction import (
    ContractionMap, NotAGnsError, c1_violation, c2_violation, coboundary, contract, contract_gns,
    epsilon_from_gns, genericity_witnesses, graded_contraction_violation, is_generic,
    is_graded_contraction, support, ternary, witness_triplets,
)
from gradcon.fano import I0, STAR
from gradcon.gns import X, X0, GnsSet, is_gns, parse_gns
from gradcon.tits import tits, verify_jacobi


def test_identity_map_is_generic():
    one = ContractionMap.ones()
    assert is_generic(one) and one.is_01
    assert len(support(one).pairs()) == 36


def test_c1_witness():
    eps = [[1] * 8 for _ in range(8)]
    eps[3][5] = 2
    assert c1_violation(ContractionMap(eps)) in ((3, 5), (5, 3))


def test_c2_witness():
    eps = [[1] * 8 for _ in range(8)]
    eps[0][1] = eps[1][0] = 0
    bad = c2_violation(ContractionMap(eps))
    assert bad is not None
    g, h, k = bad
    e = ContractionMap(eps)
    assert ternary(e, g, h, k) != ternary(e, k, g, h)


def test_coboundaries_are_generic_and_multiply():
    rng = random.Random(2)
    for _ in range(10):
        a = [rng.choice((1, 2, -3, 5)) for _ in range(8)]
        b = [rng.choice((1, -1, 7)) for _ in range(8)]
        da, db = coboundary(a), coboundary(b)
        assert is_generic(da)
        assert da * db == coboundary([x * y for x, y in zip(a, b)])
    with pytest.raises(ValueError):
        coboundary([1, 0, 1, 1, 1, 1, 1, 1])


def test_coboundary_contraction_is_a_graded_contraction():
    L = tits("F")
    eps = coboundary([1, 2, 3, 5, 7, 11, 13, 17])
    assert is_graded_contraction(eps, L)
    C = contract(L, eps)
    assert verify_jacobi(C, "blocked").ok


def test_bad_map_is_rejected_against_brackets():
    L = tits("F")
    eps = [[1] * 8 for _ in range(8)]
    eps[1][2] = eps[2][1] = 0
    bad = graded_contraction_violation(ContractionMap(eps), L)
    assert bad is not None and bad[0] == "a2"
    with pytest.raises(ValueError):
        contract(L, ContractionMap(eps))


def test_epsilon_of_listed_sets():
    for label, T in listed_gns()[:40]:
        eps = epsilon_from_gns(T)
        assert is_generic(eps) and support(eps) == T, label


def test_not_a_gns():
    T = GnsSet.from_pairs("12 35".split())
    with pytest.raises(NotAGnsError) as exc:
        epsilon_from_gns(T)
    assert exc.value.witness is not None


def test_contracted_brackets_scale():
    L = tits("F")
    T = parse_gns("E_12")
    C = contract_gns(L, T)
    for (i, j), vec in list(L.constants.items())[:500]:
        g, h = L.degrees[i], L.degrees[j]
        keep = (min(g, h), max(g, h)) in T
        assert C.bracket_basis(i, j) == (vec if keep else {})


def test_x_is_not_closed_but_x0_contracts():
    assert not is_gns(X)
    assert verify_jacobi(contract_gns(tits("F"), X0), "exhaustive").ok


def test_genericity_witnesses():
    cases = genericity_witnesses()
    assert len(cases) == 6
    assert all(c.ok for c in cases), [c.failures() for c in cases]


def test_witness_triplets_are_oriented():
    for i, j, k in witness_triplets():
        assert STAR[i][j] != k and k in I0
