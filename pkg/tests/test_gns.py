import pytest

from gradcon.catalogue import listed_gns, representatives, table_j, table_k
from gradcon.fano import I, collineation_group, p_set
from gradcon.gns import (
    EMPTY, PAIRS, S_SETS, X0, Y_SETS, E, F, GnsSet, P0jj, canonical, enumerate_all_gns,
    enumerate_nice_sets, gns_closure, gns_violation, is_gns, is_nice, named, nice_violation,
    orbit_classify, parse_gns, support_stats,
)

# raw number of generalised nice sets; confirmed by a separate breadth-first
# enumeration with a naive fixed-point closure
RAW_GNS_COUNT = 16147


def test_pair_order():
    assert PAIRS[:9] == ((0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (1, 1))
    assert len(PAIRS) == 36 and PAIRS[-1] == (7, 7)


def test_is_gns_examples():
    assert is_gns(S_SETS[13])
    assert is_gns(EMPTY)
    bad = GnsSet.from_pairs("12 35".split())
    assert not is_gns(bad)
    assert gns_violation(bad) == (1, 2, 3)


def test_witness_matches_full_scan():
    bad = GnsSet.from_pairs("12 35".split())
    from gradcon.fano import I0, STAR

    hits = [(i, j, k) for i in I0 for j in I0 for k in I0
            if (i, j) in bad and (STAR[i][j], k) in bad and not p_set(i, j, k) <= set(bad.pairs())]
    assert hits[0] == gns_violation(bad)


def test_is_nice_examples():
    assert is_nice(S_SETS[8])
    assert is_nice(EMPTY)
    assert not is_nice(GnsSet.from_pairs("12 35".split()))
    assert nice_violation(GnsSet.from_pairs("12 35".split())) is not None
    with pytest.raises(ValueError):
        is_nice(GnsSet.from_pairs(["00"]))


def test_closure_examples():
    T = GnsSet.from_pairs("12 35".split())
    C = gns_closure(T)
    assert set(p_set(1, 2, 3)) <= set(C.pairs())
    assert gns_closure(EMPTY) == EMPTY
    assert gns_closure(S_SETS[13]) == S_SETS[13]


def test_closure_is_minimal_on_instance():
    T = GnsSet.from_pairs("12 35".split())
    C = gns_closure(T)
    # every gns containing T contains C
    for U in enumerate_all_gns():
        if T.issubset(U):
            assert C.issubset(U)


def test_enumeration_counts():
    sets = enumerate_all_gns()
    assert len(sets) == RAW_GNS_COUNT
    assert len(set(sets)) == len(sets)
    assert X0 in sets and EMPTY in sets
    assert all(is_gns(T) for T in sets[::97])
    orbits = orbit_classify(sets)
    assert sum(o.size for o in orbits) == RAW_GNS_COUNT
    assert all(168 % o.size == 0 for o in orbits)


def test_orbit_count_is_246():
    # one orbit more than the tabulated list; its representative is {11,17,22,33}
    orbits = orbit_classify(enumerate_all_gns())
    assert len(orbits) == 246
    listed = {canonical(T) for _, T in listed_gns()}
    extra = [o for o in orbits if o.representative not in listed]
    assert [o.representative.notation() for o in extra] == ["11 17 22 33"]
    assert extra[0].size == 84
    assert canonical(S_SETS[1] | E("137")) == extra[0].representative


def test_empty_orbit_singleton():
    (o,) = orbit_classify([EMPTY])
    assert o.size == 1


def test_nice_orbits():
    assert len(orbit_classify(enumerate_nice_sets())) == 24


def test_listed_sets():
    listed = listed_gns()
    assert len(listed) == 245
    assert all(is_gns(T) for _, T in listed)
    assert len({canonical(T) for _, T in listed}) == 245
    assert len(representatives()) == 215


def test_named_examples():
    assert named("Y", 26) == X0 - GnsSet.from_pairs((a, b) for a in (3, 4, 6, 7) for b in (3, 4, 6, 7))
    assert len(named("Y", 26)) == 26
    assert named("F", "") == GnsSet.from_pairs(["00"])
    assert named("S", 12) == GnsSet.from_pairs("34 36 37 46 47 67".split())
    with pytest.raises(ValueError):
        named("E", "08")
    for k, T in Y_SETS.items():
        assert len(T) == k


def test_s_sets_nice_and_exceptions():
    for T in S_SETS:
        assert is_nice(T) and is_gns(T)
    from gradcon.gns import X

    for T in list(Y_SETS.values()) + [X0]:
        assert is_gns(T) and not is_gns(T & X)


def test_support_stats():
    st = support_stats(S_SETS[13])
    assert st.K == frozenset({1, 2, 3, 5, 6, 7})
    assert st.Jstar == frozenset({4, 5, 6, 7})
    st0 = support_stats(EMPTY)
    assert not st0.K and not st0.Jstar and not any(st0.n)
    st2 = support_stats(S_SETS[2])
    assert tuple(sorted((st2.n[i] for i in st2.K), reverse=True)) == (2, 1, 1)


def test_tabulated_supports():
    for i, T in enumerate(S_SETS):
        st = support_stats(T)
        assert st.K == table_k(i) and st.Jstar == table_j(i)


@pytest.mark.parametrize("text,expected", [
    ("00 01 11", GnsSet.from_pairs("00 01 11".split())),
    ("S7+E_124", S_SETS[7] | E("124")),
    ("F_I", F("I")),
    ("Y19", Y_SETS[19]),
    ("X0", X0),
    ("S_0", EMPTY),
])
def test_parse(text, expected):
    assert parse_gns(text) == expected


def test_notation_round_trip():
    for _, T in listed_gns():
        assert parse_gns(T.notation()) == T


def test_p0jj():
    assert P0jj(3) == GnsSet.from_pairs("00 03 33".split())
    with pytest.raises(ValueError):
        P0jj(0)
