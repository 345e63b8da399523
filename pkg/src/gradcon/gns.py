"""Pair sets over I0: nice sets, generalised nice sets (GNS), enumeration and orbits."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .fano import I, I0, STAR, collineation_group, generating_triplets, p_set

PAIRS: tuple[tuple[int, int], ...] = tuple((i, j) for i in I0 for j in I0 if i <= j)
PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}
FULL_MASK = (1 << len(PAIRS)) - 1


def _bit(i: int, j: int) -> int:
    return 1 << PAIR_INDEX[(i, j) if i <= j else (j, i)]


def _mask_of(pairs: Iterable[tuple[int, int]]) -> int:
    m = 0
    for i, j in pairs:
        m |= _bit(i, j)
    return m


X_MASK = _mask_of((i, j) for i in I for j in I if i < j)
DIAG_MASK = _mask_of((i, i) for i in I)


@dataclass(frozen=True, order=True)
class GnsSet:
    """A set of unordered pairs over I0 stored as a 36-bit mask.

    Bit ``k`` is set when ``PAIRS[k]`` belongs to the set; the pair order is
    00, 01, ..., 07, 11, ..., 77.  Being a ``GnsSet`` says nothing about the
    closure property, use :func:`is_gns` for that.
    """

    mask: int = 0

    def __post_init__(self):
        if not 0 <= self.mask <= FULL_MASK:
            raise ValueError(f"mask out of range: {self.mask}")

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "GnsSet":
        m = 0
        for p in pairs:
            if isinstance(p, str):
                p = (int(p[0]), int(p[1]))
            i, j = p
            if i not in I0 or j not in I0:
                raise ValueError(f"index out of range in pair {p}")
            m |= _bit(i, j)
        return cls(m)

    def pairs(self) -> list[tuple[int, int]]:
        return [p for k, p in enumerate(PAIRS) if self.mask >> k & 1]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, p) -> bool:
        i, j = p
        return bool(self.mask & _bit(i, j))

    def __or__(self, other: "GnsSet") -> "GnsSet":
        return GnsSet(self.mask | other.mask)

    def __and__(self, other: "GnsSet") -> "GnsSet":
        return GnsSet(self.mask & other.mask)

    def __sub__(self, other: "GnsSet") -> "GnsSet":
        return GnsSet(self.mask & ~other.mask)

    def issubset(self, other: "GnsSet") -> bool:
        return self.mask & ~other.mask == 0

    def apply(self, sigma) -> "GnsSet":
        """Image {σ(i)σ(j)} under a bijection of I0."""
        return GnsSet(_mask_of((sigma[i], sigma[j]) for i, j in self.pairs()))

    def notation(self) -> str:
        return " ".join(f"{i}{j}" for i, j in self.pairs())

    def __str__(self) -> str:
        return "{" + self.notation().replace(" ", ",") + "}"


EMPTY = GnsSet(0)
X = GnsSet(X_MASK)
X0 = GnsSet(FULL_MASK)


# -- the defining implication -------------------------------------------------


def _rules(triples) -> tuple[tuple[int, int, tuple[int, int, int]], ...]:
    out = {}
    for i, j, k in triples:
        prem = _bit(i, j) | _bit(STAR[i][j], k)
        concl = _mask_of(p_set(i, j, k))
        if concl & ~prem:
            out.setdefault((prem, concl), (i, j, k))
    return tuple((p, c, t) for (p, c), t in out.items())


GNS_RULES = _rules((i, j, k) for i in I0 for j in I0 for k in I0)
NICE_RULES = _rules(generating_triplets())


def _violation(mask: int, rules) -> tuple[int, int, int] | None:
    for prem, concl, t in rules:
        if prem & ~mask == 0 and concl & ~mask:
            return t
    return None


def gns_violation(T: GnsSet) -> tuple[int, int, int] | None:
    """First (i, j, k) with ij, (i*j)k in T but P_ijk not inside T, else None."""
    # scan in lexicographic triple order so the witness is reproducible
    m = T.mask
    for i in I0:
        for j in I0:
            if not m & _bit(i, j):
                continue
            for k in I0:
                if m & _bit(STAR[i][j], k) and _mask_of(p_set(i, j, k)) & ~m:
                    return (i, j, k)
    return None


def is_gns(T: GnsSet) -> bool:
    return _violation(T.mask, GNS_RULES) is None


def _check_in_x(T: GnsSet):
    if T.mask & ~X_MASK:
        raise ValueError(f"nice sets live in X; got pairs outside X in {T}")


def nice_violation(T: GnsSet) -> tuple[int, int, int] | None:
    _check_in_x(T)
    m = T.mask
    for i, j, k in generating_triplets():
        if m & _bit(i, j) and m & _bit(k, STAR[i][j]) and _mask_of(p_set(i, j, k)) & ~m:
            return (i, j, k)
    return None


def is_nice(T: GnsSet) -> bool:
    _check_in_x(T)
    return _violation(T.mask, NICE_RULES) is None


class _Closure:
    """Incremental closure under a fixed rule set (one premise pair triggers a lookup)."""

    def __init__(self, rules):
        self.by_bit: list[list[tuple[int, int]]] = [[] for _ in PAIRS]
        for prem, concl, _ in rules:
            for k in range(len(PAIRS)):
                if prem >> k & 1:
                    self.by_bit[k].append((prem & ~(1 << k), concl))

    def extend(self, closed: int, new: int) -> int:
        """Closure of ``closed | new`` assuming ``closed`` is already closed."""
        m = closed | new
        todo = [k for k in range(len(PAIRS)) if (new & ~closed) >> k & 1]
        by_bit = self.by_bit
        while todo:
            k = todo.pop()
            for other, concl in by_bit[k]:
                if other & ~m == 0:
                    add = concl & ~m
                    if add:
                        m |= add
                        while add:
                            low = add & -add
                            todo.append(low.bit_length() - 1)
                            add ^= low
        return m


_GNS_CLOSURE = _Closure(GNS_RULES)
_NICE_CLOSURE = _Closure(NICE_RULES)


def gns_closure(T: GnsSet) -> GnsSet:
    """Smallest generalised nice set containing ``T``."""
    return GnsSet(_GNS_CLOSURE.extend(0, T.mask))


def lectic_key(T: GnsSet) -> int:
    # the smallest pair index on which two sets differ decides; it belongs to the larger one
    return int(format(T.mask, "036b")[::-1], 2)


def _closed_sets(closure: _Closure, ground: int) -> list[int]:
    # prefix-preserving closure extension: each closed set is produced exactly once
    attrs = [k for k in range(len(PAIRS)) if ground >> k & 1]
    out: list[int] = []
    stack = [(closure.extend(0, 0), -1)]
    while stack:
        a, core = stack.pop()
        out.append(a)
        for k in attrs:
            if k <= core or a >> k & 1:
                continue
            b = closure.extend(a, 1 << k)
            low = (1 << k) - 1
            if b & low == a & low and b & ~ground == 0:
                stack.append((b, k))
    return out


@lru_cache(maxsize=None)
def _all_gns_masks() -> tuple[int, ...]:
    masks = _closed_sets(_GNS_CLOSURE, FULL_MASK)
    return tuple(sorted(masks, key=lambda m: lectic_key(GnsSet(m))))


def enumerate_all_gns() -> list[GnsSet]:
    """Every generalised nice set, once each, in lectic order."""
    return [GnsSet(m) for m in _all_gns_masks()]


def enumerate_nice_sets() -> list[GnsSet]:
    masks = _closed_sets(_NICE_CLOSURE, X_MASK)
    return sorted((GnsSet(m) for m in masks), key=lectic_key)


# -- collineation orbits ------------------------------------------------------


@lru_cache(maxsize=None)
def _byte_tables() -> tuple[tuple[tuple[int, ...], ...], ...]:
    tables = []
    for sigma in collineation_group():
        img = [_bit(sigma[i], sigma[j]) for i, j in PAIRS]
        per_byte = []
        for b in range(5):
            row = []
            for v in range(256):
                m = 0
                for t in range(8):
                    k = 8 * b + t
                    if v >> t & 1 and k < len(PAIRS):
                        m |= img[k]
                row.append(m)
            per_byte.append(tuple(row))
        tables.append(tuple(per_byte))
    return tuple(tables)


def orbit_masks(mask: int) -> set[int]:
    out = set()
    for t in _byte_tables():
        out.add(
            t[0][mask & 255]
            | t[1][mask >> 8 & 255]
            | t[2][mask >> 16 & 255]
            | t[3][mask >> 24 & 255]
            | t[4][mask >> 32 & 255]
        )
    return out


def canonical(T: GnsSet) -> GnsSet:
    """Orbit representative: the smallest mask in the collineation orbit."""
    return GnsSet(min(orbit_masks(T.mask)))


@dataclass(frozen=True)
class Orbit:
    representative: GnsSet
    members: tuple[GnsSet, ...]
    size: int

    @property
    def stabilizer_order(self) -> int:
        return len(collineation_group()) // self.size


def orbit_classify(sets: Iterable[GnsSet]) -> list[Orbit]:
    """Partition ``sets`` into collineation orbits, sorted by representative mask."""
    given = {T.mask for T in sets}
    seen: set[int] = set()
    orbits = []
    for m in sorted(given):
        if m in seen:
            continue
        orb = orbit_masks(m)
        seen |= orb
        members = tuple(GnsSet(x) for x in sorted(orb & given))
        orbits.append(Orbit(GnsSet(min(orb)), members, len(orb)))
    orbits.sort(key=lambda o: o.representative.mask)
    return orbits


# -- named families -----------------------------------------------------------

_S_PAIRS = (
    "",
    "12",
    "12 13",
    "12 67",
    "12 13 14",
    "12 13 17",
    "12 16 26",
    "12 16 67",
    "25 36 47",
    "12 16 17 26",
    "12 16 27 67",
    "12 16 17 26 27",
    "34 36 37 46 47 67",
    "12 23 13 17 26 35",
)
S_SETS: tuple[GnsSet, ...] = tuple(GnsSet.from_pairs(s.split()) for s in _S_PAIRS)


def _index_set(J) -> frozenset[int]:
    if isinstance(J, str):
        J = J.strip()
        if J in ("I", "i"):
            return frozenset(I)
        if J in ("", "{}", "∅", "empty"):
            return frozenset()
        if not J.isdigit():
            raise ValueError(f"bad index set {J!r}")
        J = [int(c) for c in J]
    J = frozenset(J)
    if not J <= set(I):
        raise ValueError(f"index set must lie inside I = 1..7, got {sorted(J)}")
    return J


def E(J) -> GnsSet:
    return GnsSet(_mask_of((j, j) for j in _index_set(J)))


def F(J) -> GnsSet:
    J = _index_set(J)
    return GnsSet(_bit(0, 0) | _mask_of((0, j) for j in J))


def P0jj(j: int) -> GnsSet:
    if j not in I:
        raise ValueError("P_0jj needs j in I")
    return GnsSet.from_pairs([(0, 0), (0, j), (j, j)])


def _y_sets() -> dict[int, GnsSet]:
    y7 = GnsSet.from_pairs("00 01 02 05 11 12 15".split())
    y10 = GnsSet.from_pairs((a, b) for a in (0, 1, 2, 5) for b in (0, 1, 2, 5))
    y11 = GnsSet.from_pairs([(0, 0)] + [(0, i) for i in (1, 2, 3, 5, 6)] + [(1, i) for i in (1, 2, 3, 5, 6)])
    y15 = GnsSet.from_pairs([(0, 0)] + [(0, i) for i in I] + [(1, i) for i in I])
    y19 = y15 | GnsSet.from_pairs("23 35 26 56".split())
    y26 = X0 - GnsSet.from_pairs((a, b) for a in (3, 4, 6, 7) for b in (3, 4, 6, 7))
    return {7: y7, 10: y10, 11: y11, 15: y15, 19: y19, 26: y26}


Y_SETS = _y_sets()


def named(tag: str, param=None) -> GnsSet:
    """Expand a named family: ``S`` (param i), ``E``/``F`` (param J), ``P`` (param j), ``Y`` (param k), ``X0``."""
    tag = tag.upper()
    if tag == "S":
        if not isinstance(param, int) or not 0 <= param <= 13:
            raise ValueError("S_i needs 0 <= i <= 13")
        return S_SETS[param]
    if tag == "E":
        return E(param)
    if tag == "F":
        return F(param)
    if tag == "P":
        return P0jj(param)
    if tag == "Y":
        if param not in Y_SETS:
            raise ValueError(f"Y_k exists for k in {sorted(Y_SETS)}")
        return Y_SETS[param]
    if tag in ("X0", "X_0"):
        return X0
    raise ValueError(f"unknown family {tag!r}")


_TOKEN = [
    (re.compile(r"S_?\{?(\d+)\}?$"), lambda m: named("S", int(m.group(1)))),
    (re.compile(r"E_?\{?([0-9I]*|∅|empty)\}?$"), lambda m: E(m.group(1))),
    (re.compile(r"F_?\{?([0-9I]*|∅|empty)\}?$"), lambda m: F(m.group(1))),
    (re.compile(r"P_?\{?0,?(\d),?(\d)\}?$"), lambda m: _parse_p(m)),
    (re.compile(r"Y_?\{?(\d+)\}?$"), lambda m: named("Y", int(m.group(1)))),
    (re.compile(r"X_?0$"), lambda m: X0),
]


def _parse_p(m) -> GnsSet:
    a, b = int(m.group(1)), int(m.group(2))
    if a != b:
        raise ValueError("P_0jj needs two equal indices")
    return P0jj(a)


_PAIR_LIST = re.compile(r"^[\s,{}]*(\d\d[\s,{}]*)*$")


def parse_gns(text: str) -> GnsSet:
    """Parse ``"00 01 11"``-style pair lists or named forms like ``"S7+E_124"``."""
    text = text.strip()
    if _PAIR_LIST.match(text):
        pairs = re.findall(r"\d\d", text)
        for p in pairs:
            if int(p[0]) > 7 or int(p[1]) > 7:
                raise ValueError(f"pair {p} out of range")
        return GnsSet.from_pairs(pairs)
    out = EMPTY
    for tok in re.split(r"\s*(?:\+|∪|\|)\s*", text):
        for pat, build in _TOKEN:
            m = pat.match(tok.strip())
            if m:
                out = out | build(m)
                break
        else:
            raise ValueError(f"cannot parse GNS token {tok!r}")
    return out


# -- support statistics -------------------------------------------------------


@dataclass(frozen=True)
class SupportStats:
    K: frozenset[int]
    Jstar: frozenset[int]
    n: tuple[int, ...]  # n[i] = |{j in I : ij in T}| for i in I0


def support_stats(T: GnsSet) -> SupportStats:
    off = [(i, j) for i, j in T.pairs() if i != j and i != 0]
    K = frozenset(x for p in off for x in p)
    Jstar = frozenset(STAR[i][j] for i, j in off)
    n = tuple(sum(1 for j in I if (i, j) in T) for i in I0)
    return SupportStats(K, Jstar, n)
