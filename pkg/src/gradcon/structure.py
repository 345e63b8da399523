"""Center, derived and lower central series, radical, Levi checks and fingerprints.

Every ideal computed here is graded, so subspaces are stored block by block:
a ``GradedSubspace`` holds one local Subspace of L_g for each g.  Bracket
images of blocks are memoised on the uncontracted presentation, since a
contraction only switches whole blocks on or off.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import lcm

import numpy as np

from . import tensors
from .fano import I, I0, STAR
from .gns import DIAG_MASK, X_MASK, GnsSet, support_stats
from .linalg import ZERO, Q, Subspace, kernel_from_equations, rank
from .tits import LiePresentation, d_element, killing_block, tits


class StructureError(RuntimeError):
    """A post-hoc certificate failed; this indicates an arithmetic bug, not a mathematical fact."""


class GradedSubspace:
    __slots__ = ("L", "parts")

    def __init__(self, L: LiePresentation, parts: dict):
        self.L = L
        self.parts = {g: parts.get(g) or Subspace.zero(len(L.blocks[g])) for g in I0}

    @classmethod
    def zero(cls, L) -> "GradedSubspace":
        return cls(L, {})

    @classmethod
    def full(cls, L) -> "GradedSubspace":
        return cls(L, {g: Subspace.full(len(L.blocks[g])) for g in I0})

    @classmethod
    def coordinate(cls, L, indices) -> "GradedSubspace":
        loc: dict = {g: [] for g in I0}
        for i in indices:
            loc[L.degrees[i]].append(L.local[i])
        return cls(L, {g: Subspace.coordinate(len(L.blocks[g]), v) for g, v in loc.items()})

    @classmethod
    def from_global(cls, L, U: Subspace) -> "GradedSubspace":
        """Split a subspace of L into blocks; it must be graded."""
        parts = {}
        for g in I0:
            idx = L.blocks[g]
            parts[g] = Subspace.span(len(idx), [[v[i] for i in idx] for v in U.basis])
        G = cls(L, parts)
        if G.dim != U.dim:
            raise ValueError("subspace is not graded")
        return G

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.parts.values())

    @property
    def dims(self) -> tuple:
        return tuple(self.parts[g].dim for g in I0)

    def to_global(self) -> Subspace:
        rows = []
        for g in I0:
            idx = self.L.blocks[g]
            for v in self.parts[g].basis:
                rows.append({idx[a]: x for a, x in enumerate(v) if x})
        return Subspace.from_sparse(self.L.n, rows)

    def is_coordinate(self) -> bool:
        return all(all(sum(1 for x in v if x) == 1 for v in p.basis) for p in self.parts.values())

    def coordinate_indices(self) -> dict:
        """Local indices per block for a coordinate subspace."""
        out = {}
        for g, p in self.parts.items():
            out[g] = tuple(sorted(next(a for a, x in enumerate(v) if x) for v in p.basis))
        return out

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        return GradedSubspace(self.L, {g: self.parts[g] + other.parts[g] for g in I0})

    def __and__(self, other: "GradedSubspace") -> "GradedSubspace":
        return GradedSubspace(self.L, {g: self.parts[g] & other.parts[g] for g in I0})

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSubspace) and all(self.parts[g] == other.parts[g] for g in I0)

    def __hash__(self):
        return hash(tuple(self.parts[g] for g in I0))

    def issubspace(self, other: "GradedSubspace") -> bool:
        return all(self.parts[g].issubspace(other.parts[g]) for g in I0)

    def __repr__(self) -> str:
        return f"GradedSubspace(dims={self.dims})"


# -- block-level primitives (memoised on the uncontracted presentation) -------------------


def _integer_rows(S: Subspace) -> np.ndarray:
    rows = []
    for v in S.basis:
        d = 1
        for x in v:
            d = lcm(d, int(Q(x).denominator))
        rows.append([int(Q(x) * d) for x in v])
    A = np.array(rows, dtype=object).reshape(len(rows), S.n)
    if A.size and max(abs(int(x)) for x in A.flat) < 2**31:
        return A.astype(np.int64)
    return A


def _block_image(L: LiePresentation, h: int, k: int, A: Subspace, B: Subspace) -> Subspace:
    """span [A, B] inside L_{h*k} for local subspaces A of L_h and B of L_k (uncontracted bracket)."""
    base = L.root
    memo = base.cache
    key = ("img", h, k, A, B)
    hit = memo.get(key)
    if hit is not None:
        return hit
    m = len(L.blocks[STAR[h][k]])
    T = base.block(h, k)
    if T is None or A.dim == 0 or B.dim == 0:
        out = Subspace.zero(m)
    else:
        P = tensors.einsum("ax,xyo->ayo", _integer_rows(A), T)
        P = tensors.einsum("ayo,by->abo", P, _integer_rows(B))
        flat = P.reshape(-1, m)
        rows = []
        for r in flat:
            if any(r):
                rows.append({c: Q(int(x)) for c, x in enumerate(r) if x})
        out = Subspace.from_sparse(m, rows)
    memo[key] = out
    return out


def _block_on(L: LiePresentation, g: int, h: int) -> bool:
    """True when [L_g, L_h] is not switched off (and not structurally zero)."""
    if L.eps is not None and not L.eps[g][h]:
        return False
    return L.root.block(g, h) is not None


def bracket(L: LiePresentation, A: GradedSubspace, B: GradedSubspace) -> GradedSubspace:
    """The graded subspace [A, B] of L (contracted bracket)."""
    acc: dict = {g: Subspace.zero(len(L.blocks[g])) for g in I0}
    for h in I0:
        if A.parts[h].dim == 0:
            continue
        for k in I0:
            if B.parts[k].dim == 0 or not _block_on(L, h, k):
                continue
            g = STAR[h][k]
            if acc[g].dim == len(L.blocks[g]):
                continue
            # a nonzero contraction scalar does not change the span of a block image
            acc[g] = acc[g] + _block_image(L, h, k, A.parts[h], B.parts[k])
    return GradedSubspace(L, acc)


def _block_kernel(L: LiePresentation, g: int, h: int) -> Subspace:
    """{x in L_g : [x, L_h] = 0} for the uncontracted bracket."""
    base = L.root
    key = ("ker", g, h)
    memo = base.cache
    if key in memo:
        return memo[key]
    T = base.block(g, h)
    ng = len(L.blocks[g])
    if T is None:
        out = Subspace.full(ng)
    else:
        flat = T.reshape(ng, -1)
        eqs = []
        for col in range(flat.shape[1]):
            e = {a: Q(int(flat[a, col])) for a in range(ng) if flat[a, col]}
            if e:
                eqs.append(e)
        out = kernel_from_equations(ng, eqs)
    memo[key] = out
    return out


def centralizer_in_block(L: LiePresentation, g: int, h: int) -> Subspace:
    return _block_kernel(L, g, h)


# -- ideals and series ---------------------------------------------------------------------


def center(L: LiePresentation) -> GradedSubspace:
    parts = {}
    for g in I0:
        S = Subspace.full(len(L.blocks[g]))
        for h in I0:
            if _block_on(L, g, h):
                S = S & _block_kernel(L, g, h)
        parts[g] = S
    return GradedSubspace(L, parts)


def derived_algebra(L: LiePresentation) -> GradedSubspace:
    F = GradedSubspace.full(L)
    return bracket(L, F, F)


def _series(L, start: GradedSubspace, step) -> list[GradedSubspace]:
    out = [start]
    while True:
        nxt = step(out[-1])
        if nxt.dim == out[-1].dim:
            return out
        out.append(nxt)
        if nxt.dim == 0:
            return out


def derived_series_spaces(L: LiePresentation, start: GradedSubspace | None = None) -> list[GradedSubspace]:
    start = start or GradedSubspace.full(L)
    return _series(L, start, lambda A: bracket(L, A, A))


def lower_central_series_spaces(L: LiePresentation, start: GradedSubspace | None = None) -> list[GradedSubspace]:
    """A^0 = A, A^{k+1} = [A, A^k], for an ideal or subalgebra A (default L)."""
    start = start or GradedSubspace.full(L)
    return _series(L, start, lambda B: bracket(L, start, B))


def derived_series(L: LiePresentation, start=None) -> tuple[int, ...]:
    return tuple(S.dim for S in derived_series_spaces(L, start))


def lower_central_series(L: LiePresentation, start=None) -> tuple[int, ...]:
    return tuple(S.dim for S in lower_central_series_spaces(L, start))


def _index(seq: tuple) -> int | None:
    """Number of steps to reach 0, or None when the series stabilises above 0."""
    return len(seq) - 1 if seq[-1] == 0 else None


def radical(L: LiePresentation, derived: GradedSubspace | None = None, verify: bool = True) -> GradedSubspace:
    """Killing-orthogonal complement of [L, L], certified to be a solvable ideal."""
    derived = derived or derived_algebra(L)
    parts = {}
    for g in I0:
        n = len(L.blocks[g])
        D = derived.parts[g]
        if D.dim == 0:
            parts[g] = Subspace.full(n)
            continue
        K = killing_block(L, g)
        eqs = []
        for v in D.basis:
            e = {}
            for b in range(n):
                s = sum((v[a] * K[a][b] for a in range(n) if v[a]), ZERO)
                if s:
                    e[b] = s
            if e:
                eqs.append(e)
        parts[g] = kernel_from_equations(n, eqs)
    R = GradedSubspace(L, parts)
    if verify:
        if not bracket(L, GradedSubspace.full(L), R).issubspace(R):
            raise StructureError("Killing-perp of the derived algebra is not an ideal")
        if derived_series(L, R)[-1] != 0:
            raise StructureError("Killing-perp of the derived algebra is not solvable")
    return R


# -- subalgebras -----------------------------------------------------------------------


def _as_graded(L, U) -> GradedSubspace:
    if isinstance(U, GradedSubspace):
        return U
    return GradedSubspace.from_global(L, U)


def is_subalgebra(L: LiePresentation, U) -> bool:
    U = _as_graded(L, U)
    return bracket(L, U, U).issubspace(U)


def _coordinate_killing(L: LiePresentation, S: dict, g: int) -> np.ndarray:
    """den^2 * intrinsic Killing form of a closed coordinate subalgebra, on its L_g part."""
    base = L.root if L.is_01_contraction else L
    ng = len(S[g])
    acc = np.zeros((ng, ng), dtype=object)
    if ng == 0:
        return acc
    for h in I0:
        gh = STAR[g][h]
        if not S[h] or not S[gh]:
            continue
        if L.eps is not None and not (L.eps[g][h] and L.eps[g][gh]):
            continue
        A, B = base.block(g, h), base.block(g, gh)
        if A is None or B is None:
            continue
        A = A[np.ix_(S[g], S[h], S[gh])]
        B = B[np.ix_(S[g], S[gh], S[h])]
        P = tensors.einsum("byw,awy->ab", A, B)
        if L.eps is not None and not L.is_01_contraction:
            P = tensors.as_object(P) * (L.eps[g][h] * L.eps[g][gh])
        acc = acc + tensors.as_object(P)
    return acc


def is_semisimple_subalgebra(L: LiePresentation, U) -> bool:
    """Closed U with nondegenerate intrinsic Killing form (the zero subalgebra counts as semisimple)."""
    U = _as_graded(L, U)
    if not is_subalgebra(L, U):
        raise ValueError("subspace is not closed under the bracket")
    if U.dim == 0:
        return True
    if U.is_coordinate():
        S = U.coordinate_indices()
        for g in I0:
            if S[g]:
                K = _coordinate_killing(L, S, g)
                if rank([[Q(x) for x in row] for row in K]) != len(S[g]):
                    return False
        return True
    return _generic_semisimple(L, U)


def _generic_semisimple(L: LiePresentation, U: GradedSubspace) -> bool:
    G = U.to_global()
    basis = [list(v) for v in G.basis]
    d = len(basis)
    ad = []
    for p in range(d):
        cols = [G.coords(L.bracket(basis[p], basis[q])) for q in range(d)]
        ad.append([[cols[q][r] for q in range(d)] for r in range(d)])
    K = [[sum((ad[a][r][s] * ad[b][s][r] for r in range(d) for s in range(d)), ZERO) for b in range(d)] for a in range(d)]
    return rank(K) == d


@dataclass
class LeviCheck:
    closed: bool
    semisimple: bool
    complement: bool

    def __bool__(self) -> bool:
        return self.closed and self.semisimple and self.complement

    def failed(self) -> list[str]:
        return [k for k, v in asdict(self).items() if not v]


def verify_levi(L: LiePresentation, claimed, rad: GradedSubspace | None = None) -> LeviCheck:
    U = _as_graded(L, claimed)
    rad = rad or radical(L)
    closed = is_subalgebra(L, U)
    semi = closed and is_semisimple_subalgebra(L, U)
    comp = U.dim + rad.dim == L.n and (U & rad).dim == 0
    return LeviCheck(closed, semi, comp)


# -- named pieces used by the block formulas ------------------------------------------------


def pieces(L: LiePresentation, *items) -> GradedSubspace:
    """Coordinate subspace from tokens ('L', k), ('D', k), ('M', k), k in I0 (L only for 0)."""
    dec = L.decomposition
    idx: list = []
    for kind, k in items:
        idx += {"L": dec.L, "D": dec.D, "M": dec.M}[kind][k]
    return GradedSubspace.coordinate(L, idx)


def blocks(L: LiePresentation, ks) -> GradedSubspace:
    return pieces(L, *(("L", k) for k in ks))


# -- bracket and centralizer identities of T(C) --------------------------------------------


def bracket_identities(L: LiePresentation) -> dict[str, bool]:
    """Subspace identities for the bracket of the uncontracted T(C), for all i != j.

    Keys name the identity; values are True when it holds for every index choice.
    """
    P = lambda *t: pieces(L, *t)  # noqa: E731
    Z = GradedSubspace.zero(L)
    res = {k: True for k in (
        "[L0,Di]=0", "[L0,Mi]=Mi", "[Di,Di]=0", "[Di,Dj]=D(i*j)", "[Di,Mi]=0", "[Di,Mj]=M(i*j)",
        "[Mi,Mi]=L0", "[Mi,Mj]=F D_{ei,ej} + M(i*j)",
        "(a) centralizer of L0 in L0 is 0", "(b) centralizer of Lj in L0 is 0",
        "(c) centralizer of Lj in Lj is Dj", "(d) centralizer of Lk in Lj is 0",
    )}

    def upd(key, ok):
        res[key] = res[key] and ok

    L0 = P(("L", 0))
    for i in I:
        Di, Mi = P(("D", i)), P(("M", i))
        upd("[L0,Di]=0", bracket(L, L0, Di) == Z)
        upd("[L0,Mi]=Mi", bracket(L, L0, Mi) == Mi)
        upd("[Di,Di]=0", bracket(L, Di, Di) == Z)
        upd("[Di,Mi]=0", bracket(L, Di, Mi) == Z)
        upd("[Mi,Mi]=L0", bracket(L, Mi, Mi) == L0)
        for j in I:
            if j == i:
                continue
            Dj, Mj = P(("D", j)), P(("M", j))
            k = STAR[i][j]
            upd("[Di,Dj]=D(i*j)", bracket(L, Di, Dj) == P(("D", k)))
            upd("[Di,Mj]=M(i*j)", bracket(L, Di, Mj) == P(("M", k)))
            Dij = GradedSubspace.from_global(L, Subspace.span(L.n, [d_element(L, i, j)]))
            upd("[Mi,Mj]=F D_{ei,ej} + M(i*j)", bracket(L, Mi, Mj) == Dij + P(("M", k)))
    n0 = len(L.blocks[0])
    upd("(a) centralizer of L0 in L0 is 0", _block_kernel(L, 0, 0).dim == 0)
    for j in I:
        upd("(b) centralizer of Lj in L0 is 0", _block_kernel(L, 0, j).dim == 0)
        Dj_local = Subspace.coordinate(len(L.blocks[j]), [L.local[t] for t in L.decomposition.D[j]])
        upd("(c) centralizer of Lj in Lj is Dj", _block_kernel(L, j, j) == Dj_local)
        for k in I:
            if k != j:
                upd("(d) centralizer of Lk in Lj is 0", _block_kernel(L, j, k).dim == 0)
    del n0
    return res


# -- fingerprints --------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    algebra: str
    dim: int
    center_dim: int
    radical_dim: int
    levi_dim: int
    reductive: bool
    derived_series: tuple
    lower_central_series: tuple
    radical_derived_series: tuple
    radical_lower_central_series: tuple
    solvability_index: int | None
    nilpotency_index: int | None
    n_multiset: tuple
    size_in_x: int
    size_diagonal: int
    has_00: bool

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class StructureReport:
    """Computed invariants of one contracted algebra, with the spaces behind them."""

    L: LiePresentation
    center: GradedSubspace
    derived: GradedSubspace
    radical: GradedSubspace
    derived_series: list
    lower_central_series: list
    radical_derived_series: list
    radical_lower_central_series: list
    extra: dict = field(default_factory=dict)

    @property
    def levi_dim(self) -> int:
        return self.L.n - self.radical.dim

    @property
    def reductive(self) -> bool:
        return self.radical == self.center


def analyse(L: LiePresentation) -> StructureReport:
    ds = derived_series_spaces(L)
    lcs = lower_central_series_spaces(L)
    der = ds[1] if len(ds) > 1 else ds[0]
    z = center(L)
    r = radical(L, der)
    rds = derived_series_spaces(L, r) if r.dim else [r]
    rlcs = lower_central_series_spaces(L, r) if r.dim else [r]
    return StructureReport(L, z, der, r, ds, lcs, rds, rlcs)


def fingerprint_of(report: StructureReport, T: GnsSet) -> Fingerprint:
    L = report.L
    st = support_stats(T)
    dseq = tuple(S.dim for S in report.derived_series)
    lseq = tuple(S.dim for S in report.lower_central_series)
    return Fingerprint(
        algebra=L.algebra,
        dim=L.n,
        center_dim=report.center.dim,
        radical_dim=report.radical.dim,
        levi_dim=report.levi_dim,
        reductive=report.reductive,
        derived_series=dseq,
        lower_central_series=lseq,
        radical_derived_series=tuple(S.dim for S in report.radical_derived_series),
        radical_lower_central_series=tuple(S.dim for S in report.radical_lower_central_series),
        solvability_index=_index(dseq),
        nilpotency_index=_index(lseq),
        n_multiset=tuple(sorted((st.n[i] for i in I0), reverse=True)),
        size_in_x=bin(T.mask & X_MASK).count("1"),
        size_diagonal=bin(T.mask & DIAG_MASK).count("1"),
        has_00=(0, 0) in T,
    )


def fingerprint(C: str, T: GnsSet) -> Fingerprint:
    from .contraction import contract_gns

    return fingerprint_of(analyse(contract_gns(tits(C), T)), T)


# -- closed-form expectations per family ------------------------------------------------------

_LABEL = None


def _label_parts(label: str):
    import re

    global _LABEL
    if _LABEL is None:
        _LABEL = re.compile(r"^(?:S(?P<i>\d+))?(?:\+?(?P<fam>E|F|P)_(?P<arg>\{\}|I|\d+))?$")
    if label == "X0" or (label.startswith("Y") and label[1:].isdigit()):
        return ("Y", int(label[1:]) if label != "X0" else 0, None)
    m = _LABEL.match(label)
    if not m:
        raise ValueError(f"unrecognised family label {label!r}")
    i = int(m["i"]) if m["i"] is not None else None
    fam, arg = m["fam"], m["arg"]
    if fam == "P":
        j = int(arg[1])
        return ("P", i, j)
    if fam is None:
        return ("E", i, frozenset())
    J = frozenset(I) if arg == "I" else frozenset() if arg == "{}" else frozenset(int(c) for c in arg)
    return (fam, i, J)


def expected_structure(L: LiePresentation, label: str) -> dict:
    """Block formulas for the center, derived algebra, radical, Levi factor and series.

    ``label`` is a catalogue label such as "S13", "S2+F_47", "E_12", "P_011",
    "S1+P_033", "Y19" or "X0".  Only the quantities the formulas determine are
    returned.
    """
    from .catalogue import table_j, table_k

    n = L.n
    lt = len(L.blocks[1])  # dim L_i for i != 0
    d0 = len(L.blocks[0])
    P = lambda *t: pieces(L, *t)  # noqa: E731
    Lb = lambda ks: blocks(L, ks)  # noqa: E731
    Z = GradedSubspace.zero(L)
    FULL = GradedSubspace.full(L)
    Dall = P(*(("D", k) for k in I))
    Mall = lambda ks: P(*(("M", k) for k in ks))  # noqa: E731
    fam, i, J = _label_parts(label)
    out: dict = {}
    if fam == "Y":
        if i == 0:
            out.update(center=Z, derived=FULL, radical=Z, levi=FULL, reductive=True)
            return out
        if i in (7, 11, 15, 19):
            R = P(("D", 1)) + Lb([k for k in I if k != 1])
            out.update(levi=P(("L", 0), ("M", 1)), radical=R, reductive=False)
            out["center"] = {7: Lb([3, 4, 6, 7]), 11: Lb([4, 7]), 15: Z, 19: Z}[i]
            out["radical_derived"] = {7: Lb([2, 5]), 11: Lb([2, 3, 5, 6]), 15: Lb(range(2, 8)),
                                      19: Lb(range(2, 8))}[i]
            m = {7: 2, 11: 4, 15: 6, 19: 6}[i]
            out["radical_derived_series"] = (6 * lt + 2, m * lt, 2 * lt, 0) if i == 19 else (6 * lt + 2, m * lt, 0)
            out["radical_lower_central_series"] = (6 * lt + 2, m * lt)
            return out
        if i in (10, 26):
            R = Lb([3, 4, 6, 7])
            out.update(levi=Lb([0, 1, 2, 5]), radical=R, radical_derived_series=(4 * lt, 0))
            out["center"] = R if i == 10 else Z
            out["reductive"] = i == 10
            return out
        raise ValueError(label)
    if i is None:
        if fam == "E":
            if not J:
                return expected_structure(L, "S0")
            out.update(center=P(("L", 0)) + Dall + Mall(k for k in I if k not in J), derived=P(("L", 0)),
                       radical=FULL, levi=Z, reductive=False,
                       lower_central_series=(n, d0, 0), derived_series=(n, d0, 0))
            return out
        if fam == "F":
            R = Lb(I)
            if not J:
                out.update(center=R, derived=P(("L", 0)), radical=R, levi=P(("L", 0)), reductive=True,
                           lower_central_series=(n, d0), derived_series=(n, d0))
                return out
            Dv = P(("L", 0)) + Mall(J)
            out.update(center=Dall + Mall(k for k in I if k not in J), derived=Dv, radical=R,
                       levi=P(("L", 0)), reductive=False, radical_derived_series=(R.dim, 0),
                       lower_central_series=(n, Dv.dim), derived_series=(n, Dv.dim))
            return out
        if fam == "P":
            j = J
            R = P(("D", j)) + Lb(k for k in I if k != j)
            out.update(center=R, radical=R, levi=P(("L", 0), ("M", j)), reductive=True,
                       radical_derived_series=(R.dim, 0))
            return out
    K, Ji = table_k(i), table_j(i)
    top = (n, len(Ji) * lt, lt, 0) if i == 13 else (n, len(Ji) * lt, 0)
    if fam == "E" and not J:
        z = P(("L", 0)) + Lb(k for k in I if k not in K)
        out.update(center=z, derived=Lb(Ji), radical=FULL, levi=Z, reductive=(i == 0))
        if i == 0:
            out.update(lower_central_series=(n, 0), derived_series=(n, 0))
        else:
            out.update(lower_central_series=top, derived_series=(n, len(Ji) * lt, 0))
        return out
    if fam == "E":
        Dv = P(("L", 0)) + Lb(Ji)
        lcs = (n, Dv.dim, lt, 0) if i == 13 else (n, Dv.dim, 0)
        z = P(("L", 0)) + Lb(k for k in I if k not in J and k not in K) + P(*(("D", k) for k in J if k not in K))
        out.update(center=z, derived=Dv, radical=FULL, levi=Z, reductive=False,
                   lower_central_series=lcs, derived_series=(n, Dv.dim, 0))
        return out
    if fam == "F":
        z = Lb(k for k in I if k not in J and k not in K) + P(*(("D", k) for k in J if k not in K))
        Dv = P(("L", 0)) + Lb(Ji) + Mall(k for k in J if k not in Ji)
        R = Lb(I)
        rl = (R.dim, len(Ji) * lt, lt, 0) if i == 13 else (R.dim, len(Ji) * lt, 0)
        out.update(center=z, derived=Dv, radical=R, levi=P(("L", 0)), reductive=False,
                   radical_derived=Lb(Ji), radical_derived_series=(R.dim, len(Ji) * lt, 0),
                   radical_lower_central_series=rl)
        return out
    if fam == "P":
        j = J
        z = P(("D", j)) + Lb(k for k in I if k not in K and k != j)
        R = P(("D", j)) + Lb(k for k in I if k != j)
        out.update(center=z, radical=R, levi=P(("L", 0), ("M", j)), reductive=False,
                   radical_derived=Lb(Ji), radical_derived_series=(R.dim, len(Ji) * lt, 0))
        return out
    raise ValueError(label)


def compare_with_expected(report: StructureReport, expected: dict) -> dict[str, bool]:
    """Which of the expected quantities the computed report reproduces."""
    L = report.L
    got = {
        "center": report.center,
        "derived": report.derived,
        "radical": report.radical,
        "reductive": report.reductive,
        "lower_central_series": tuple(S.dim for S in report.lower_central_series),
        "derived_series": tuple(S.dim for S in report.derived_series),
        "radical_derived_series": tuple(S.dim for S in report.radical_derived_series),
        "radical_lower_central_series": tuple(S.dim for S in report.radical_lower_central_series),
    }
    res = {}
    for k, v in expected.items():
        if k == "levi":
            res[k] = bool(verify_levi(L, v, report.radical))
        elif k == "radical_derived":
            res[k] = bracket(L, report.radical, report.radical) == v
        else:
            res[k] = got[k] == v
    return res
