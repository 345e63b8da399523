from itertools import permutations

from gradcon.fano import (
    BITS, I, I0, LINES, STAR, collineation_group, compose, generating_triplets, inverse,
    is_collineation, is_generating_triplet, p_set, star,
)


def test_star_examples():
    assert star(1, 2) == 5
    assert star(0, 6) == 6
    assert star(4, 4) == 0


def test_label_table():
    assert BITS[5] == (1, 1, 0)
    assert BITS[4] == (1, 1, 1)
    assert BITS[7] == (0, 1, 1)


def test_group_laws():
    for i in I0:
        for j in I0:
            assert STAR[i][j] == STAR[j][i]
            for k in I0:
                assert STAR[STAR[i][j]][k] == STAR[i][STAR[j][k]]


def test_seven_lines():
    assert len(LINES) == 7
    assert (1, 2, 5) in LINES


def test_collineation_group():
    G = collineation_group()
    assert len(G) == 168
    assert tuple(I0) in G
    assert list(G) == sorted(G)
    assert all(s[STAR[1][2]] == STAR[s[1]][s[2]] for s in G)
    Gs = set(G)
    for a in G[:12]:
        assert inverse(a) in Gs
        for b in G[::17]:
            assert compose(a, b) in Gs


def test_collineation_filter_matches_brute_force():
    brute = [(0,) + w for w in permutations(I) if is_collineation((0,) + w)]
    assert tuple(brute) == collineation_group()


def test_generating_triplets():
    assert is_generating_triplet(1, 2, 3)
    assert not is_generating_triplet(1, 2, 5)
    assert not is_generating_triplet(0, 1, 2)
    trip = generating_triplets()
    assert len(trip) == 168


def test_group_is_regular_on_generating_triplets():
    images = {(s[1], s[2], s[3]) for s in collineation_group()}
    assert images == set(generating_triplets())


def test_p_set_examples():
    assert p_set(1, 2, 3) == {(1, 2), (2, 3), (1, 3), (1, 7), (2, 6), (3, 5)}
    assert p_set(0, 0, 0) == {(0, 0)}
    for j in I:
        assert p_set(0, j, j) == {(0, 0), (0, j), (j, j)}


def test_p_set_symmetric():
    for i in I0:
        for j in I0:
            for k in I0:
                ref = p_set(i, j, k)
                for a, b, c in permutations((i, j, k)):
                    assert p_set(a, b, c) == ref
