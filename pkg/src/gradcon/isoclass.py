"""Graded isomorphisms between contracted algebras and the final classification.

Two tools do the work. Explicit block maps certify that two contractions are
isomorphic, and every such map is checked exactly. Necessary conditions on
the degree bijection rule out isomorphism for the remaining pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .catalogue import listed_gns, representatives
from .composition import d_operator, hurwitz, mul, sign_table
from .contraction import contract_gns
from .fano import I, I0, STAR, collineation_group
from .gns import E, F, GnsSet, P0jj, S_SETS, canonical, enumerate_all_gns, orbit_classify
from .linalg import ONE, ZERO, Q, solve
from .structure import Fingerprint, analyse, fingerprint_of
from .tits import (
    BlockMap,
    LiePresentation,
    _octonion_derivation_basis,
    block_map_from_dense,
    is_block_homomorphism,
    is_invertible_block_map,
    octonion_derivation_coords,
    tits,
)

# -- degree bijections ------------------------------------------------------------------


def _pairs_table(T: GnsSet) -> list[list[bool]]:
    return [[(i, j) in T for j in I0] for i in I0]


def compatible_sigmas(T: GnsSet, Tp: GnsSet) -> list[tuple[int, ...]]:
    """Bijections sigma of I0 (sigma(0) = 0) that an isomorphism L_T -> L_T' could induce.

    sigma must satisfy ij in T <=> sigma(i)sigma(j) in T' and, for ij in T,
    sigma(i*j) = sigma(i)*sigma(j).  Backtracking over sigma(1), ..., sigma(7).
    """
    if len(T) != len(Tp):
        return []
    A, B = _pairs_table(T), _pairs_table(Tp)
    if A[0][0] != B[0][0]:
        return []
    out: list[tuple[int, ...]] = []
    sigma = [0] * 8
    used = [False] * 8
    used[0] = True

    def ok_upto(k: int) -> bool:
        # constraints involving k and indices < k (already assigned)
        s = sigma[k]
        if A[k][k] != B[s][s] or A[0][k] != B[0][s]:
            return False
        for i in range(1, k):
            t = sigma[i]
            if A[i][k] != B[t][s]:
                return False
            if A[i][k]:
                m = STAR[i][k]
                if m < k and sigma[m] != STAR[t][s]:
                    return False
        # earlier pairs whose product is k
        for i in range(1, k):
            for j in range(i + 1, k):
                if A[i][j] and STAR[i][j] == k and sigma[k] != STAR[sigma[i]][sigma[j]]:
                    return False
        return True

    def rec(k: int):
        if k == 8:
            out.append(tuple(sigma))
            return
        for s in I:
            if not used[s]:
                sigma[k] = s
                used[s] = True
                if ok_upto(k):
                    rec(k + 1)
                used[s] = False
        sigma[k] = 0

    rec(1)
    return out


def is_compatible_sigma(sigma, T: GnsSet, Tp: GnsSet) -> bool:
    """Direct check of the two conditions for a single bijection."""
    if sigma[0] != 0:
        return False
    for i in I0:
        for j in I0:
            inT = (i, j) in T
            if inT != ((sigma[i], sigma[j]) in Tp):
                return False
            if inT and sigma[STAR[i][j]] != STAR[sigma[i]][sigma[j]]:
                return False
    return True


def compatible_sigmas_bruteforce(T: GnsSet, Tp: GnsSet) -> list[tuple[int, ...]]:
    """Reference implementation scanning all 5040 bijections."""
    out = []
    for w in permutations(I):
        sigma = (0,) + w
        if is_compatible_sigma(sigma, T, Tp):
            out.append(sigma)
    return out


# -- recipes ------------------------------------------------------------------------------


@dataclass(frozen=True)
class MergeRecipe:
    """A transcribed isomorphism L_source -> L_target together with its constructor.

    ``kind`` is one of "swap" (params (i, j)), "perm" (params: the bijection of I0),
    "tilde_phi" (params (line, l)) or "hat_phi" (params (i, j, l)).
    """

    source_label: str
    target_label: str
    source: GnsSet
    target: GnsSet
    kind: str
    params: tuple
    item: str = ""

    @property
    def tag(self) -> str:
        return f"{self.kind}{self.params}"


def _transposition(i: int, j: int) -> tuple[int, ...]:
    s = list(I0)
    s[i], s[j] = j, i
    return tuple(s)


def _perm_from_pairs(*cycles) -> tuple[int, ...]:
    s = list(I0)
    for a, b in cycles:
        s[a], s[b] = b, a
    return tuple(s)


def _identity(n: int) -> list[list[Q]]:
    return [[ONE if a == b else ZERO for a in range(n)] for b in range(n)]


def retag_map(sigma, L: LiePresentation) -> BlockMap:
    """theta-hat on every block: D_i basis -> D_sigma(i) basis in order, e_i (x) u -> e_sigma(i) (x) u."""
    return BlockMap(sigma, {g: _identity(len(L.blocks[g])) for g in I0})


def _derivation_with_values(values: dict) -> list:
    """The derivation of O (8x8 matrix) taking e_t to values[t] (octonion coordinate tuples)."""
    mats, _ = _octonion_derivation_basis()
    rows, rhs = [], []
    for t, v in values.items():
        for r in range(8):
            rows.append([M[r][t] for M in mats])
            rhs.append(v[r])
    c = solve(rows, rhs)
    if c is None:
        raise ValueError(f"no derivation of O with prescribed values {values}")
    return [[sum((c[p] * mats[p][r][col] for p in range(len(mats))), ZERO) for col in range(8)] for r in range(8)]


def line_basis(i: int, j: int, l: int) -> dict[int, tuple[list, list]]:
    """For the oriented line (i, j, i*j) and l off it: k -> (x_k, y_k) in D-coordinates.

    x_k kills e_i and e_j and sends e_l to e_k e_l / 2; y_k = D_{e_a, e_b} / 4 where
    (k, a, b) is a cyclic rotation of (i, j, i*j).
    """
    k3 = STAR[i][j]
    line = (i, j, k3)
    s = sign_table()
    if s[i][j] != 1:
        raise ValueError(f"({i}, {j}, {k3}) is not positively oriented")
    if l in line or l == 0:
        raise ValueError(f"{l} lies on the line {line}")
    O = hurwitz("O")
    zero = tuple([ZERO] * 8)
    out = {}
    for r in range(3):
        k, a, b = line[r], line[(r + 1) % 3], line[(r + 2) % 3]
        img = mul(O.e(k), O.e(l))
        xk = _derivation_with_values({i: zero, j: zero, l: tuple(Q(v, 2) for v in img.coords)})
        x = octonion_derivation_coords(xk)
        y = [Q(v, 4) for v in octonion_derivation_coords(d_operator(a, b))]
        out[k] = (x, y)
    return out


def signed_line_swap(i: int, j: int, l: int, L: LiePresentation) -> BlockMap:
    """x_{i*j}, y_{i*j} fixed; x_i -> x_j, x_j -> -x_i (same for y); e_i (x) u -> e_j (x) u,
    e_j (x) u -> -e_i (x) u; identity elsewhere.  Block permutation: the transposition (i j)."""
    basis = line_basis(i, j, l)
    dec = L.decomposition
    d0 = len(dec.M[1])

    def local_coords(k, vec):
        # coordinates inside D_k (positions within the 14-dim D-coordinate vector)
        pos = dec.D[k]
        if any(vec[p] for p in range(14) if p not in pos):
            raise ValueError(f"x/y vector for {k} is not in D_{k}")
        return [vec[p] for p in pos]

    def change(k):
        x, y = basis[k]
        return [local_coords(k, x), local_coords(k, y)]  # rows = basis vectors

    def inverse2(M):
        a, b = M[0]
        c, d = M[1]
        det = a * d - b * c
        if not det:
            raise ValueError("x_k, y_k do not span D_k")
        return [[d / det, -b / det], [-c / det, a / det]]

    # matrix of D_src -> D_dst with x_src -> sign * x_dst, y_src -> sign * y_dst
    def d_block(src, dst, sign):
        Bs = change(src)  # rows in src-local coords
        Bd = change(dst)
        # columns of P_s are x_src, y_src; P_s^{-1} gives (x, y)-coordinates
        Ps = [[Bs[0][r], Bs[1][r]] for r in range(2)]
        Pinv = inverse2(Ps)
        Pd = [[Bd[0][r], Bd[1][r]] for r in range(2)]
        return [[sign * sum((Pd[r][t] * Pinv[t][c] for t in range(2)), ZERO) for c in range(2)] for r in range(2)]

    sigma = _transposition(i, j)
    local = {}
    n0 = len(L.blocks[0])
    local[0] = _identity(n0)
    for k in I:
        size = 2 + d0
        M = [[ZERO] * size for _ in range(size)]
        if k == i:
            D, m = d_block(i, j, ONE), ONE
        elif k == j:
            D, m = d_block(j, i, -ONE), -ONE
        else:
            D, m = [[ONE, ZERO], [ZERO, ONE]], ONE
        for r in range(2):
            for c in range(2):
                M[r][c] = D[r][c]
        for t in range(d0):
            M[2 + t][2 + t] = m
        local[k] = M
    return BlockMap(sigma, local)


def build_block_map(recipe: MergeRecipe, C: str | LiePresentation) -> BlockMap:
    L = tits(C) if isinstance(C, str) else C.root
    kind, p = recipe.kind, recipe.params
    if kind == "swap":
        return retag_map(_transposition(*p), L)
    if kind == "perm":
        return retag_map(p, L)
    if kind == "tilde_phi":
        line, l = p
        return signed_line_swap(line[1], line[2], l, L)
    if kind == "hat_phi":
        return signed_line_swap(*p, L)
    raise ValueError(f"unknown recipe kind {kind!r}")


def is_graded_isomorphism(f, A: LiePresentation, B: LiePresentation) -> bool:
    """f: L_A -> L_B (BlockMap or dense n x n matrix) is invertible, block-permuting and bracket-preserving."""
    if A.n != B.n:
        return False
    if not isinstance(f, BlockMap):
        if len(f) != A.n or any(len(r) != A.n for r in f):
            raise ValueError("matrix has the wrong size")
        f = block_map_from_dense(f, A)
        if f is None:
            return False
    if sorted(f.sigma) != list(I0) or f.sigma[0] != 0:
        return False
    if not is_invertible_block_map(f):
        return False
    ok, _ = is_block_homomorphism(f, A, B)
    return ok


def verify_recipe(recipe: MergeRecipe, C: str = "F") -> bool:
    L = tits(C)
    f = build_block_map(recipe, L)
    return is_graded_isomorphism(f, contract_gns(L, recipe.source), contract_gns(L, recipe.target))


# -- the merge table ---------------------------------------------------------------------------


def _lab_e(i: int, J: str) -> tuple[str, GnsSet]:
    return (f"S{i}+E_{J}" if J else f"S{i}"), S_SETS[i] | E(J)


def _lab_f(i: int, J: str) -> tuple[str, GnsSet]:
    label = f"S{i}+F_{J if J else '{}'}"
    return label, S_SETS[i] | F(J)


def _recipe(src, dst, kind, params, item) -> MergeRecipe:
    return MergeRecipe(src[0], dst[0], src[1], dst[1], kind, params, item)


def _transcribed() -> list[MergeRecipe]:
    out = []
    out.append(_recipe(("S2+P_077", S_SETS[2] | P0jj(7)), ("S2+P_044", S_SETS[2] | P0jj(4)), "swap", (4, 7), "i"))
    for fam, ctor in (("E", E), ("F", F)):
        out.append(_recipe((f"{fam}_125", ctor("125")), (f"{fam}_123", ctor("123")), "perm", _perm_from_pairs((3, 5)), "ii"))
        out.append(_recipe((f"{fam}_1235", ctor("1235")), (f"{fam}_1234", ctor("1234")), "perm", _perm_from_pairs((4, 5)), "ii"))
    for a, b in (("36", "34"), ("136", "134"), ("1236", "1234")):
        out.append(_recipe(_lab_e(1, a), _lab_e(1, b), "swap", (4, 6), "iii"))
    for a, b in (("7", "4"), ("17", "14"), ("27", "24"), ("127", "124"), ("237", "234"), ("1237", "1234")):
        out.append(_recipe(_lab_e(2, a), _lab_e(2, b), "swap", (4, 7), "iv"))
    out.append(_recipe(_lab_e(3, "137"), _lab_e(3, "136"), "hat_phi", (6, 7, 1), "v"))
    for J in ("", "1", "2", "12", "23", "123", "234", "1234"):
        out.append(_recipe(_lab_e(4, J), _lab_e(5, J.replace("4", "7")), "tilde_phi", ((1, 7, 4), 3), "vi"))
    out.append(_recipe(_lab_e(8, "237"), _lab_e(8, "234"), "hat_phi", (7, 4, 2), "vii"))
    out.append(_recipe(_lab_f(1, "37"), _lab_f(1, "34"), "swap", (4, 7), "viii"))
    out.append(_recipe(_lab_f(1, "12356"), _lab_f(1, "12567"), "swap", (3, 7), "viii"))
    out.append(_recipe(_lab_f(2, "7"), _lab_f(2, "4"), "swap", (4, 7), "ix"))
    out.append(_recipe(_lab_f(2, "123567"), _lab_f(2, "123456"), "swap", (4, 7), "ix"))
    for J in ("", "I"):
        out.append(_recipe(_lab_f(4, J), _lab_f(5, J), "tilde_phi", ((1, 7, 4), 3), "x"))
    return out


def transcribed_recipes() -> list[MergeRecipe]:
    """The 30 merges between listed orbit representatives."""
    return _transcribed()


def extra_recipes() -> list[MergeRecipe]:
    """Merges for orbits missing from the listing (S1 + E_137 is its own collineation orbit)."""
    return [_recipe(_lab_e(1, "137"), _lab_e(1, "134"), "swap", (4, 7), "extra")]


def merge_recipes() -> list[MergeRecipe]:
    return transcribed_recipes() + extra_recipes()


# -- classification ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, k):
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass
class ClassEntry:
    representative: GnsSet
    label: str
    orbit_labels: list[str]
    orbit_sizes: list[int]
    fingerprint: Fingerprint
    merged_by: list[str] = field(default_factory=list)
    verified: bool = True

    def as_dict(self) -> dict:
        return {
            "representative": self.representative.notation(),
            "label": self.label,
            "orbits": [{"label": a, "size": s} for a, s in zip(self.orbit_labels, self.orbit_sizes)],
            "fingerprint": self.fingerprint.as_dict(),
            "merged_by": list(self.merged_by),
            "verified": self.verified,
        }


@dataclass
class MergeResult:
    recipe: MergeRecipe
    verified: bool

    def as_dict(self) -> dict:
        r = self.recipe
        return {"source": r.source_label, "target": r.target_label, "constructor": r.kind,
                "params": [list(x) if isinstance(x, tuple) else x for x in r.params],
                "item": r.item, "verified": self.verified}


@dataclass
class ClassificationReport:
    algebra: str
    orbit_count: int
    classes: list[ClassEntry]
    merges: list[MergeResult]
    undecided: list[tuple[str, str]]
    separated_by_fingerprint: int
    separated_by_sigma: int
    unlisted_orbits: list[str]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def ok(self) -> bool:
        return not self.undecided and all(m.verified for m in self.merges)

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "orbit_count": self.orbit_count,
            "class_count": self.class_count,
            "merge_count": len(self.merges),
            "merges_verified": sum(m.verified for m in self.merges),
            "undecided": [list(p) for p in self.undecided],
            "separated_by_fingerprint": self.separated_by_fingerprint,
            "separated_by_sigma": self.separated_by_sigma,
            "unlisted_orbits": list(self.unlisted_orbits),
            "merges": [m.as_dict() for m in self.merges],
            "classes": [c.as_dict() for c in self.classes],
        }


def orbit_table() -> list[tuple[str, GnsSet, int]]:
    """(label, member used for computations, orbit size) for every collineation orbit of GNS.

    Listed sets keep their catalogue label; an unlisted orbit is labelled by a
    recipe that names one of its members, else by its canonical notation.
    """
    orbits = orbit_classify(enumerate_all_gns())
    by_canon = {o.representative.mask: o for o in orbits}
    named: dict[int, tuple[str, GnsSet]] = {}
    for label, T in listed_gns():
        named.setdefault(canonical(T).mask, (label, T))
    for r in extra_recipes():
        named.setdefault(canonical(r.source).mask, (r.source_label, r.source))
    out = []
    for m, o in sorted(by_canon.items()):
        label, T = named.get(m, (o.representative.notation(), o.representative))
        out.append((label, T, o.size))
    return out


def classify(C: str = "F", workers: int = 1) -> ClassificationReport:
    """Union the orbits along the verified merge recipes, then separate the remaining classes."""
    L = tits(C)
    table = orbit_table()
    listed = {lab for lab, _ in listed_gns()}
    sets = {lab: T for lab, T, _ in table}
    sizes = {lab: s for lab, _, s in table}
    orbit_of = {canonical(T).mask: lab for lab, T, _ in table}
    uf = _UnionFind([lab for lab, _, _ in table])
    merges = []
    merged_by: dict[str, list[str]] = {}
    for r in merge_recipes():
        ok = verify_recipe(r, C)
        merges.append(MergeResult(r, ok))
        if ok:
            a, b = orbit_of[canonical(r.source).mask], orbit_of[canonical(r.target).mask]
            uf.union(a, b)
            merged_by.setdefault(b, []).append(r.tag)
            merged_by.setdefault(a, []).append(r.tag)

    fps = _fingerprints(L, [(lab, T) for lab, T, _ in table], workers)
    # a class is represented by its member that appears in the representative list when possible
    preferred = {lab for lab, _ in representatives()}
    groups: dict[str, list[str]] = {}
    for lab, _, _ in table:
        groups.setdefault(uf.find(lab), []).append(lab)
    classes = []
    for root, members in groups.items():
        rep = next((m for m in members if m in preferred), min(members))
        fset = {fps[m] for m in members}
        classes.append(ClassEntry(
            representative=sets[rep], label=rep,
            orbit_labels=members, orbit_sizes=[sizes[m] for m in members],
            fingerprint=fps[rep],
            merged_by=sorted({t for m in members for t in merged_by.get(m, [])}),
            verified=len(fset) == 1,
        ))
    classes.sort(key=lambda c: c.representative.mask)

    undecided, by_fp, by_sigma = [], 0, 0
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            A, B = classes[a], classes[b]
            if A.fingerprint != B.fingerprint:
                by_fp += 1
                continue
            if compatible_sigmas(A.representative, B.representative):
                undecided.append((A.label, B.label))
            else:
                by_sigma += 1
    unlisted = [lab for lab, _, _ in table if lab not in listed]
    return ClassificationReport(C, len(table), classes, merges, undecided, by_fp, by_sigma, unlisted)


def _fingerprint_job(args):
    C, items = args
    L = tits(C)
    return [(lab, fingerprint_of(analyse(contract_gns(L, T)), T)) for lab, T in items]


def _fingerprints(L: LiePresentation, items, workers: int) -> dict[str, Fingerprint]:
    if workers <= 1:
        return dict(_fingerprint_job((L.algebra, items)))
    from concurrent.futures import ProcessPoolExecutor

    chunks = [items[k::workers] for k in range(workers)]
    out: dict[str, Fingerprint] = {}
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(_fingerprint_job, [(L.algebra, c) for c in chunks]):
            out.update(part)
    return out


def sigma_of(f: BlockMap) -> tuple[int, ...]:
    return tuple(f.sigma)


def weyl_orbit_pair(T: GnsSet, sigma) -> tuple[GnsSet, GnsSet]:
    """(T, sigma~T), the pair related by the lift of a collineation."""
    if tuple(sigma) not in collineation_group():
        raise ValueError("not a collineation")
    return T, T.apply(sigma)
