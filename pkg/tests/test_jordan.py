import random

from gradcon.jordan import (
    JordanElement, apply_operator, diagonal, e_minus, e_plus, inner_derivation, jordan_algebra,
    jordan_derivation_algebra, jordan_mul, r_operator, skew_ad, star_mul,
)
from gradcon.linalg import Q, span


def rand_elem(J, rng):
    return JordanElement(J, tuple(Q(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(J.dim)))


def test_dims():
    for c, d in zip("FKHO", (6, 9, 15, 27)):
        J = jordan_algebra(c)
        assert J.dim == d and J.dim0 == d - 1


def test_unit_and_square():
    J = jordan_algebra("F")
    one = JordanElement(J, J.one())
    u = e_plus(1, 3)
    assert jordan_mul(one, u) == u
    assert jordan_mul(e_plus(1, 2), e_plus(1, 2)) == diagonal(J, 1, 1, 0)


def test_star_example():
    J = jordan_algebra("F")
    D = skew_ad(e_minus(1, 2))
    u, v = e_plus(1, 3), e_plus(2, 3)
    assert star_mul(u, apply_operator(D, v)) == Q(1, 3) * diagonal(J, 1, -2, 1)
    w = star_mul(u, JordanElement(J, (0,) * J.dim))
    assert w == JordanElement(J, (0,) * J.dim)


def test_star_traceless_and_commutative():
    rng = random.Random(1)
    J = jordan_algebra("H")
    for _ in range(10):
        u = JordanElement(J, J.from_j0([rng.randint(-2, 2) for _ in range(J.dim0)]))
        v = JordanElement(J, J.from_j0([rng.randint(-2, 2) for _ in range(J.dim0)]))
        assert star_mul(u, v).trace() == 0
        assert jordan_mul(u, v) == jordan_mul(v, u)


def test_jordan_identity():
    rng = random.Random(3)
    for c in "KO":
        J = jordan_algebra(c)
        for _ in range(5):
            u, v = rand_elem(J, rng), rand_elem(J, rng)
            u2 = jordan_mul(u, u)
            assert jordan_mul(jordan_mul(u2, v), u) == jordan_mul(u2, jordan_mul(v, u))


def test_derivation_dims_and_kernel():
    assert [jordan_derivation_algebra(c).dim for c in "FKHO"] == [3, 8, 21, 52]
    for c in "FKH":
        J = jordan_algebra(c)
        assert J.leibniz_kernel() == J.derivations


def test_inner_derivations():
    J = jordan_algebra("K")
    u, v = J.unit_vector(0), J.unit_vector(4)
    assert inner_derivation(JordanElement(J, u), JordanElement(J, u)).nnz == 0
    for M in J.derivation_matrices():
        assert not any(M.matvec(J.one()))


def test_commutator_of_r_operators():
    # [[R_u, R_v], R_w] = R_{(v, w, u)} with (a, b, c) = (a.b).c - a.(b.c)
    rng = random.Random(5)
    J = jordan_algebra("H")
    for _ in range(4):
        u, v, w = (rand_elem(J, rng) for _ in range(3))
        Ru, Rv, Rw = r_operator(u), r_operator(v), r_operator(w)
        lhs = ((Ru @ Rv) - (Rv @ Ru)) @ Rw - Rw @ ((Ru @ Rv) - (Rv @ Ru))
        assoc = jordan_mul(jordan_mul(v, w), u) - jordan_mul(v, jordan_mul(w, u))
        assert lhs == r_operator(assoc)


def test_der_hf_is_skew_matrices():
    J = jordan_algebra("F")
    mats = [skew_ad(e_minus(p, q)) for p, q in ((1, 2), (1, 3), (2, 3))]
    flat = [J.flatten(M) for M in mats]
    vecs = [[f.get(k, 0) for k in range(J.dim * J.dim)] for f in flat]
    assert span(vecs, J.dim * J.dim) == J.derivations


def test_j0_star_spans_j0():
    J = jordan_algebra("K")
    vecs = [J.to_j0(J.star(J.j0_vector(a), J.j0_vector(b))) for a in range(J.dim0) for b in range(J.dim0)]
    assert span(vecs, J.dim0).dim == J.dim0
