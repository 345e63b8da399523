"""Tabulated data: the listed GNS orbit representatives, the 215 class
representatives, and the supports K_i / J_i of the sets S_i."""

from __future__ import annotations

from .gns import E, F, GnsSet, P0jj, S_SETS, X0, Y_SETS

# K_i, J_i for S_i
TABLE_K = {
    0: "", 1: "12", 2: "123", 3: "1267", 4: "1234", 5: "1237", 6: "126",
    7: "1267", 8: "234567", 9: "1267", 10: "1267", 11: "1267", 12: "3467", 13: "123567",
}
TABLE_J = {
    0: "", 1: "5", 2: "56", 3: "5", 4: "567", 5: "456", 6: "345",
    7: "35", 8: "1", 9: "345", 10: "35", 11: "345", 12: "125", 13: "4567",
}


def table_k(i: int) -> frozenset[int]:
    return frozenset(int(c) for c in TABLE_K[i])


def table_j(i: int) -> frozenset[int]:
    return frozenset(int(c) for c in TABLE_J[i])


# index sets J for S_i + E_J (J ranges; "" is the empty set)
S_E_LISTS = {
    1: "- 1 3 12 13 34 36 123 134 346 136 1234 3467 1236 1367 12346 13467 123467",
    2: "- 1 2 4 7 12 14 17 23 24 27 47 123 124 127 234 247 147 237 1234 1237 1247 2347 12347",
    3: "- 1 3 12 13 16 34 123 126 134 137 136 1234 1267 1236 1346 12346 12367 123467",
    4: "- 1 2 12 23 123 234 1234",
    5: "- 1 2 12 23 123 237 1237",
    6: "- 1 7 12 17 126 127 1267",
    7: "- 1 2 4 12 14 16 17 24 27 124 126 127 146 247 147 1267 1246 1247 12467",
    8: "- 2 23 25 234 235 237 2356 2345 23456 234567",
    9: "- 1 2 7 12 17 26 27 126 127 267 1267",
    10: "- 1 4 12 14 17 124 126 147 1267 1246 12467",
    11: "- 1 6 12 16 67 126 167 1267",
    12: "- 3 34 346 3467",
    13: "- 1 12 123",
}
S_F_LISTS = {
    1: "- 3 34 37 125 347 3467 1235 12567 12356 123456 I",
    2: "- 4 7 47 12356 123456 123567 I",
    3: "- 3 34 12567 123567 I",
    4: "- I", 5: "- I", 6: "- 7 123456 I", 7: "- 4 123567 I", 8: "- I",
    9: "- I", 10: "- 4 123567 I", 11: "- I", 12: "- I", 13: "- I",
}
EF_LIST = "- 1 12 123 125 1234 1235 12345 123456 I"
P_LIST = ((0, 1), (1, 3), (2, 4), (2, 7), (3, 3), (6, 7), (7, 4), (10, 4))  # (i, j): S_i + P_0jj


def _js(spec: str) -> list[str]:
    return ["" if t == "-" else t for t in spec.split()]


def _label_j(J: str) -> str:
    return J if J else "{}"


def _entries(lists_e, lists_f, ef, plist, ys):
    out: list[tuple[str, GnsSet]] = []
    for k in ys:
        out.append((f"Y{k}", Y_SETS[k]) if k != 0 else ("X0", X0))
    for i, j in plist:
        if i == 0:
            out.append((f"P_0{j}{j}", P0jj(j)))
        else:
            out.append((f"S{i}+P_0{j}{j}", S_SETS[i] | P0jj(j)))
    for J in _js(ef):
        out.append((f"E_{_label_j(J)}", E(J)))
    for J in _js(ef):
        out.append((f"F_{_label_j(J)}", F(J)))
    for i, spec in lists_e.items():
        for J in _js(spec):
            out.append((f"S{i}+E_{_label_j(J)}" if J else f"S{i}", S_SETS[i] | E(J)))
    for i, spec in lists_f.items():
        for J in _js(spec):
            out.append((f"S{i}+F_{_label_j(J)}", S_SETS[i] | F(J)))
    return out


def listed_gns() -> list[tuple[str, GnsSet]]:
    """The 245 listed generalised nice sets, one per collineation orbit, with labels."""
    return _entries(S_E_LISTS, S_F_LISTS, EF_LIST, P_LIST, (7, 10, 11, 15, 19, 26, 0))


# entries removed from the listing to obtain the 215 class representatives
_DROP_E = {1: "36 136 1236", 2: "7 17 27 127 237 1237", 3: "137", 5: None, 8: "237"}
_DROP_F = {1: "37 12356", 2: "7 123567", 5: None}


def representatives() -> list[tuple[str, GnsSet]]:
    """The 215 class representatives."""
    def prune(lists, drops):
        out = {}
        for i, spec in lists.items():
            if i in drops and drops[i] is None:
                continue
            gone = set(drops.get(i, "").split()) if i in drops else set()
            out[i] = " ".join(t for t in spec.split() if t not in gone)
        return out

    ef = " ".join(t for t in EF_LIST.split() if t not in ("125", "1235"))
    plist = tuple(p for p in P_LIST if p != (2, 7))
    return _entries(prune(S_E_LISTS, _DROP_E), prune(S_F_LISTS, _DROP_F), ef, plist, (7, 10, 11, 15, 19, 26, 0))
