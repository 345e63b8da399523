import pytest

from conftest import full_only
from gradcon.fano import I, LINES, collineation_group
from gradcon.jordan import JordanElement, jordan_algebra, r_operator
from gradcon.linalg import Q
from gradcon.structure import is_semisimple_subalgebra, is_subalgebra
from gradcon.tits import (
    CACHE_ENV, InconsistentLift, build_tits, cache_path, derj_part, distinguished_subalgebra, format_constants,
    is_block_homomorphism, is_killing_nondegenerate, jacobiator, m_element, parse_constants,
    tits, verify_jacobi, weyl_lift,
)

DIMS = {"F": 52, "K": 78, "H": 133, "O": 248}


@pytest.mark.parametrize("c", "FKHO")
def test_dimensions_and_blocks(c):
    L = tits(c)
    J = jordan_algebra(c)
    assert L.n == DIMS[c]
    assert len(L.blocks[0]) == J.derivations.dim
    assert all(len(L.blocks[i]) == 2 + J.dim0 for i in I)
    assert not L.grading_violations()


@pytest.mark.parametrize("c", "FK")
def test_jacobi_exhaustive(c):
    r = verify_jacobi(tits(c), "exhaustive")
    assert r.ok and r.checked == DIMS[c] * (DIMS[c] - 1) * (DIMS[c] - 2) // 6


def test_jacobi_modes_agree_on_f():
    L = tits("F")
    assert verify_jacobi(L, "blocked").ok
    assert verify_jacobi(L, "sampled", seed=3, count=300).ok
    with pytest.raises(ValueError):
        verify_jacobi(L, "nope")


def test_killing_nondegenerate_f():
    assert is_killing_nondegenerate(tits("F"))


def test_same_degree_bracket_lands_in_der_j():
    # [e_i (x) u, e_i (x) v] = -4 [R_u, R_v] for u, v in J0
    L = tits("F")
    J = jordan_algebra("F")
    u = J.from_j0([1, 0, 2, 0, 0])
    v = J.from_j0([0, 1, 0, -1, 3])
    for i in I:
        w = L.bracket(m_element(L, i, u), m_element(L, i, v))
        assert all(w[k] == 0 for k in range(L.n) if k not in L.blocks[0])
        Ru, Rv = r_operator(JordanElement(J, u)), r_operator(JordanElement(J, v))
        assert derj_part(L, w) == ((Ru @ Rv) - (Rv @ Ru)).scale(-4)


def test_round_trip_and_determinism():
    L = tits("F")
    text = format_constants(L)
    assert format_constants(build_tits("F")) == text
    L2 = parse_constants(text)
    assert L2.n == L.n and L2.constants == L.constants and L2.degrees == L.degrees


def test_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    path = cache_path("F")
    assert path is not None and path.parent == tmp_path


def test_jacobiator_detects_corruption():
    L = tits("F")
    consts = {k: dict(v) for k, v in L.constants.items()}
    key = next(iter(consts))
    o = next(iter(consts[key]))
    consts[key][o] += 1
    from gradcon.tits import LiePresentation

    bad = LiePresentation("F", L.labels, L.degrees, consts, L.kinds, decomposition=L.decomposition)
    r = verify_jacobi(bad, "exhaustive")
    assert not r.ok
    assert jacobiator(bad, *r.witness)


@pytest.mark.parametrize("c,tkk,lines,inn", [("F", 21, 24, 8), ("K", 35, 38, 16)])
def test_distinguished_subalgebras(c, tkk, lines, inn):
    L = tits(c)
    line = LINES[0]
    A = distinguished_subalgebra(L, "tkk", line)
    B = distinguished_subalgebra(L, "line_blocks", line)
    C = distinguished_subalgebra(L, "innstr", 1)
    assert (A.dim, B.dim, C.dim) == (tkk, lines, inn)
    for U in (A, B, C):
        assert is_subalgebra(L, U) and is_semisimple_subalgebra(L, U)
    assert distinguished_subalgebra(L, "der_j").dim == len(L.blocks[0])
    with pytest.raises(ValueError):
        distinguished_subalgebra(L, "tkk", (1, 2, 3))


@full_only
def test_distinguished_subalgebras_large():
    for c, dims in (("H", (66, 69, 35)), ("O", (133, 136, 78))):
        L = tits(c)
        got = (distinguished_subalgebra(L, "tkk", LINES[0]).dim,
               distinguished_subalgebra(L, "line_blocks", LINES[0]).dim,
               distinguished_subalgebra(L, "innstr", 1).dim)
        assert got == dims


def test_weyl_lifts_with_sign_twist():
    L = tits("F")
    for sigma in collineation_group()[:24]:
        f = weyl_lift(sigma, L)
        assert f.sigma == tuple(sigma)


def test_literal_lift_mostly_fails():
    L = tits("F")
    failures = 0
    for sigma in collineation_group():
        try:
            weyl_lift(sigma, L, literal=True)
        except InconsistentLift:
            failures += 1
    assert failures == 147


def test_non_collineation_rejected():
    with pytest.raises(ValueError):
        weyl_lift((0, 2, 1, 3, 4, 5, 6, 7), tits("F"))
