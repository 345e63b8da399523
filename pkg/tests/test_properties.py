from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gradcon.composition import hurwitz, mul, norm
from gradcon.contraction import coboundary, is_generic
from gradcon.fano import collineation_group, compose, inverse, is_collineation
from gradcon.gns import FULL_MASK, GnsSet, canonical, enumerate_all_gns, gns_closure, is_gns, parse_gns
from gradcon.isoclass import compatible_sigmas, is_compatible_sigma
from gradcon.jordan import JordanElement, jordan_algebra, star_mul
from gradcon.linalg import Q, kernel, solve, span
from gradcon.structure import fingerprint

GROUP = collineation_group()
ALL_GNS = enumerate_all_gns()

masks = st.integers(min_value=0, max_value=FULL_MASK).map(GnsSet)
sigmas = st.sampled_from(GROUP)
gns_sets = st.sampled_from(ALL_GNS)
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
fast = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@fast
@given(gns_sets, sigmas)
def test_gns_is_collineation_invariant(T, sigma):
    assert is_gns(T.apply(sigma))
    assert canonical(T.apply(sigma)) == canonical(T)


@fast
@given(masks)
def test_closure_is_extensive_and_idempotent(T):
    C = gns_closure(T)
    assert T.issubset(C) and is_gns(C)
    assert gns_closure(C) == C


@fast
@given(masks, masks)
def test_closure_is_monotone(A, B):
    assert gns_closure(A).issubset(gns_closure(A | B))


@fast
@given(gns_sets, gns_sets)
def test_intersection_of_gns_is_gns(A, B):
    assert is_gns(A & B)


@fast
@given(gns_sets)
def test_notation_round_trip(T):
    assert parse_gns(T.notation()) == T


@fast
@given(sigmas, sigmas)
def test_group_closure(p, q):
    assert is_collineation(compose(p, q))
    assert compose(p, inverse(p)) == tuple(range(8))


@fast
@given(gns_sets, sigmas)
def test_compatible_sigma_of_an_image(T, sigma):
    assert is_compatible_sigma(sigma, T, T.apply(sigma))
    assert tuple(sigma) in compatible_sigmas(T, T.apply(sigma))


@settings(max_examples=8, deadline=None)
@given(gns_sets, sigmas)
def test_fingerprint_is_collineation_invariant(T, sigma):
    assert fingerprint("F", T) == fingerprint("F", T.apply(sigma))


@fast
@given(st.lists(st.sampled_from([1, -1, 2, Fraction(1, 3), -5]), min_size=8, max_size=8))
def test_coboundaries_are_generic(alpha):
    assert is_generic(coboundary(alpha))


@fast
@given(st.lists(small, min_size=8, max_size=8), st.lists(small, min_size=8, max_size=8))
def test_octonion_norm_multiplicative(a, b):
    O = hurwitz("O")
    x, y = O.element(a), O.element(b)
    assert norm(mul(x, y)) == norm(x) * norm(y)


@fast
@given(st.lists(small, min_size=8, max_size=8), st.lists(small, min_size=8, max_size=8))
def test_star_laws(a, b):
    J = jordan_algebra("K")
    u = JordanElement(J, J.from_j0(a))
    v = JordanElement(J, J.from_j0(b))
    w = star_mul(u, v)
    assert w == star_mul(v, u)
    assert w.trace() == 0


@fast
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5),
       st.lists(small, min_size=4, max_size=4))
def test_kernel_and_solve(rows, x):
    K = kernel(rows)
    rank = span(rows, 4).dim
    assert K.dim + rank == 4
    for v in K.basis:
        assert all(sum(Q(r) * c for r, c in zip(row, v)) == 0 for row in rows)
    b = [sum(Q(r) * c for r, c in zip(row, x)) for row in rows]
    y = solve(rows, b)
    assert y is not None
    assert [sum(Q(r) * c for r, c in zip(row, y)) for row in rows] == b
