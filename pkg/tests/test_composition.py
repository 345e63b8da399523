import random

from gradcon.composition import (
    FIGURE_ORIENTATION, associator, commutator, conj, d_operator, derivation_algebra, hurwitz,
    is_alternative, mul, norm, norm_is_multiplicative_on_basis_pairs, orientation_bits,
    orientation_survivors, sign_table, signs_from_orientation, trace, apply_matrix,
)
from gradcon.fano import I, I0, STAR
from gradcon.linalg import Q

O = hurwitz("O")


def rand_oct(rng):
    return O.element([Q(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(8)])


def test_e2e5():
    assert mul(O.e(2), O.e(5)) == O.e(1)
    assert mul(O.e(5), O.e(2)) == -O.e(1)


def test_sign_table_rules():
    s = sign_table()
    assert all(s[0][j] == s[j][0] == 1 for j in I0)
    assert all(s[i][i] == -1 for i in I)
    assert s[2][5] == 1 and s[5][2] == -1


def test_table_is_figure_orientation():
    assert sign_table() == signs_from_orientation(FIGURE_ORIENTATION)
    bits = orientation_bits(FIGURE_ORIENTATION)
    survivors = orientation_survivors()
    assert bits in survivors
    # the oracle's first survivor differs from the figure orientation
    assert survivors[0] == (0, 0, 0, 0, 1, 0, 1)
    assert bits == (0, 0, 1, 1, 1, 0, 0)


def test_composition_laws_random():
    rng = random.Random(7)
    for _ in range(100):
        a, b = rand_oct(rng), rand_oct(rng)
        assert norm(mul(a, b)) == norm(a) * norm(b)
        assert associator(a, a, b).is_zero() and associator(a, b, a).is_zero()
        assert mul(a, conj(a)) == norm(a) * O.one()
        assert mul(a, a) - trace(a) * a + norm(a) * O.one() == O.zero()


def test_norm_formula():
    a = O.element([1, 2, 0, 0, 3, 0, 0, -1])
    assert norm(a) == 1 + 4 + 9 + 1


def test_table_checks():
    s = sign_table()
    assert is_alternative(s) and norm_is_multiplicative_on_basis_pairs(s)


def test_commutator_on_lines():
    s = sign_table()
    for i in I:
        for j in I:
            if i != j:
                k = STAR[i][j]
                # [e_j, e_j e_i] = 2 e_j (e_j e_i) = -2 e_i up to the sign of e_j e_i
                assert commutator(O.e(j), mul(O.e(j), O.e(i))) == -2 * O.e(i)
                assert commutator(O.e(i), O.e(j)) == 2 * s[i][j] * O.e(k)


def test_d_operator():
    for j in I:
        M = d_operator(0, j)
        assert all(x == 0 for r in M for x in r)
    for i in I:
        for k in I:
            if i != k:
                A, B = d_operator(i, k), d_operator(k, i)
                assert all(A[r][c] == -B[r][c] for r in range(8) for c in range(8))
                assert apply_matrix(A, O.e(i)) == 4 * O.e(k)


def test_derivation_dimensions():
    assert [derivation_algebra(c).dim for c in "FKHO"] == [0, 0, 3, 14]
    comps = derivation_algebra("O").components
    assert comps[0].dim == 0
    assert all(comps[g].dim == 2 for g in I)


def test_derivations_are_homogeneous_and_leibniz():
    der = derivation_algebra("O")
    s = sign_table()
    for g in I:
        for v in der.components[g].basis:
            M = [[v[r * 8 + c] for c in range(8)] for r in range(8)]
            # d(e_g) = 0 and d maps e_j into the span of e_{g*j}
            assert all(M[r][g] == 0 for r in range(8))
            for c in I0:
                assert all(M[r][c] == 0 for r in range(8) if r != STAR[g][c])
            for a in I0:
                for b in I0:
                    lhs = apply_matrix(M, mul(O.e(a), O.e(b)))
                    rhs = mul(apply_matrix(M, O.e(a)), O.e(b)) + mul(O.e(a), apply_matrix(M, O.e(b)))
                    assert lhs == rhs


def test_derivations_spanned_by_d_operators():
    from gradcon.linalg import span

    der = derivation_algebra("O")
    vecs = [[d_operator(i, j)[r][c] for r in range(8) for c in range(8)] for i in I for j in I if i < j]
    assert span(vecs, 64) == der.space
