"""Z2^3 as the labelled index set {0, ..., 7} and its collineations."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

# label -> bit vector; the product is NOT the integer xor of the labels
BITS: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 1),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
)
_LABEL = {v: i for i, v in enumerate(BITS)}

I0 = tuple(range(8))
I = tuple(range(1, 8))


def _xor(a, b):
    return tuple(x ^ y for x, y in zip(a, b))


STAR: tuple[tuple[int, ...], ...] = tuple(
    tuple(_LABEL[_xor(BITS[i], BITS[j])] for j in I0) for i in I0
)


def star(i: int, j: int) -> int:
    """Group operation on labels: g_i + g_j = g_{i*j}."""
    return STAR[i][j]


LINES: tuple[tuple[int, int, int], ...] = tuple(
    sorted({tuple(sorted((i, j, STAR[i][j]))) for i in I for j in I if i != j})
)


def is_collineation(perm) -> bool:
    if len(perm) != 8 or perm[0] != 0 or sorted(perm) != list(I0):
        return False
    return all(perm[STAR[i][j]] == STAR[perm[i]][perm[j]] for i in I for j in I)


@lru_cache(maxsize=None)
def collineation_group() -> tuple[tuple[int, ...], ...]:
    """All 168 collineations as tuples ``p`` with ``p[0] == 0``, in lexicographic order."""
    out = []
    for w in permutations(I):
        p = (0,) + w
        if is_collineation(p):
            out.append(p)
    return tuple(out)


def compose(p, q) -> tuple[int, ...]:
    # (p o q)(i) = p(q(i))
    return tuple(p[q[i]] for i in I0)


def inverse(p) -> tuple[int, ...]:
    inv = [0] * 8
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def is_generating_triplet(i: int, j: int, k: int) -> bool:
    if 0 in (i, j, k) or len({i, j, k}) < 3:
        return False
    return k != STAR[i][j]


def generating_triplets(ordered: bool = True) -> list[tuple[int, int, int]]:
    trip = [(i, j, k) for i in I for j in I for k in I if is_generating_triplet(i, j, k)]
    if ordered:
        return trip
    return sorted({tuple(sorted(t)) for t in trip})


def pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


def p_set(i: int, j: int, k: int) -> frozenset[tuple[int, int]]:
    """The six (possibly coinciding) pairs forced by a triple of indices."""
    s = STAR
    return frozenset(
        {
            pair(i, j),
            pair(j, k),
            pair(k, i),
            pair(i, s[j][k]),
            pair(j, s[k][i]),
            pair(k, s[i][j]),
        }
    )
