"""The Tits construction T(C) = der(O) + O0 (x) J0 + der(J) with its Z2^3-grading."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from pathlib import Path

import numpy as np

from . import tensors
from .composition import d_operator, derivation_algebra, hurwitz, sign_table
from .fano import I, I0, LINES, STAR, collineation_group
from .jordan import jordan_algebra
from .linalg import ONE, ZERO, Q, Subspace, rank, solve

CACHE_ENV = "GRADCON_CACHE"
THIRD = Q(1, 3)


@dataclass(frozen=True)
class BlockDecomposition:
    """Index lists (global basis positions) of L_g, and of D_i, M_i inside L_i."""

    L: dict
    D: dict
    M: dict

    def dims(self) -> dict:
        return {g: len(v) for g, v in self.L.items()}


class JacobiResult:
    def __init__(self, ok: bool, checked: int, witness=None, mode: str = ""):
        self.ok = ok
        self.checked = checked
        self.witness = witness
        self.mode = mode

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        if self.ok:
            return f"JacobiResult(ok, mode={self.mode}, checked={self.checked})"
        return f"JacobiResult(FAILED at basis triple {self.witness}, mode={self.mode})"


class LiePresentation:
    """Basis labels, sparse rational structure constants (i < j) and a Z2^3 degree map.

    A contracted presentation keeps a reference to its parent and the 8x8 matrix
    ``eps``; its constants are materialised on first access.
    """

    def __init__(self, algebra: str, labels, degrees, constants=None, kinds=None,
                 parent: "LiePresentation | None" = None, eps=None, decomposition=None):
        self.algebra = algebra
        self.labels = tuple(labels)
        self.degrees = tuple(degrees)
        self.n = len(self.labels)
        self.kinds = tuple(kinds) if kinds is not None else ("",) * self.n
        self.parent = parent
        self.eps = eps
        self._constants = constants
        blocks: dict[int, list[int]] = {g: [] for g in I0}
        for i, g in enumerate(self.degrees):
            blocks[g].append(i)
        self.blocks = {g: tuple(v) for g, v in blocks.items()}
        self.local = {}
        for g, idx in self.blocks.items():
            for p, i in enumerate(idx):
                self.local[i] = p
        self.decomposition = decomposition
        self._block_cache: dict | None = None
        self._den: int | None = None
        self.cache: dict = {}  # memo for derived data (structure module)

    def __repr__(self) -> str:
        tag = "" if self.eps is None else " (contracted)"
        return f"LiePresentation(T({self.algebra}), dim={self.n}{tag})"

    @property
    def root(self) -> "LiePresentation":
        p = self
        while p.parent is not None:
            p = p.parent
        return p

    @property
    def is_01_contraction(self) -> bool:
        return self.parent is not None and all(x in (0, 1) for row in self.eps for x in row)

    @property
    def constants(self) -> dict:
        if self._constants is None:
            base = self.parent.constants
            deg = self.degrees
            out = {}
            for (i, j), vec in base.items():
                e = self.eps[deg[i]][deg[j]]
                if e:
                    out[(i, j)] = vec if e == 1 else {k: e * v for k, v in vec.items()}
            self._constants = out
        return self._constants

    def bracket_basis(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.constants.get((i, j), {})
        return {k: -v for k, v in self.constants.get((j, i), {}).items()}

    def bracket(self, x, y) -> list:
        out = [ZERO] * self.n
        c = self.constants
        nx = [(i, Q(a)) for i, a in enumerate(x) if a]
        ny = [(j, Q(b)) for j, b in enumerate(y) if b]
        for i, a in nx:
            for j, b in ny:
                if i < j:
                    vec, s = c.get((i, j)), a * b
                elif i > j:
                    vec, s = c.get((j, i)), -a * b
                else:
                    continue
                if vec:
                    for k, v in vec.items():
                        out[k] += s * v
        return out

    def unit(self, i: int) -> list:
        v = [ZERO] * self.n
        v[i] = ONE
        return v

    # -- block tensors ------------------------------------------------------
    @property
    def denominator(self) -> int:
        if self._den is None:
            if self.is_01_contraction:
                self._den = self.parent.denominator
            else:
                d = 1
                for vec in self.constants.values():
                    for v in vec.values():
                        d = lcm(d, int(v.denominator))
                self._den = d
        return self._den

    def block(self, g: int, h: int):
        """Integer array T[a, b, c] = den * coefficient of (L_{g*h})_c in [(L_g)_a, (L_h)_b]; None if zero."""
        if self.is_01_contraction:
            return self.parent.block(g, h) if self.eps[g][h] == 1 else None
        if self._block_cache is None:
            self._build_blocks()
        return self._block_cache.get((g, h))

    def _build_blocks(self):
        den = self.denominator
        deg, loc = self.degrees, self.local
        size = {g: len(v) for g, v in self.blocks.items()}
        entries: dict = {}
        for (i, j), vec in self.constants.items():
            g, h = deg[i], deg[j]
            for k, v in vec.items():
                x = int(v * den)
                entries.setdefault((g, h), []).append((loc[i], loc[j], loc[k], x))
                entries.setdefault((h, g), []).append((loc[j], loc[i], loc[k], -x))
        big = max((abs(e[3]) for lst in entries.values() for e in lst), default=0) >= 2**62
        out = {}
        for (g, h), lst in entries.items():
            A = np.zeros((size[g], size[h], size[STAR[g][h]]), dtype=object if big else np.int64)
            for a, b, c, x in lst:
                A[a, b, c] = x
            out[(g, h)] = A
        self._block_cache = out

    # -- cheap structural checks -------------------------------------------
    def grading_violations(self) -> list:
        deg = self.degrees
        bad = []
        for (i, j), vec in self.constants.items():
            for k in vec:
                if deg[k] != STAR[deg[i]][deg[j]]:
                    bad.append((i, j, k))
        return bad


# -- construction ---------------------------------------------------------------


def _flat_coords_in_component(comp: Subspace, M) -> list:
    flat = [M[r][c] for r in range(8) for c in range(8)]
    return comp.coords(flat)


@lru_cache(maxsize=None)
def _octonion_derivation_basis():
    """(matrices, degree of each, coordinate function) for the ordered basis of der(O)."""
    der = derivation_algebra("O")
    mats, degs = [], []
    for g in I:
        comp = der.components[g]
        for v in comp.basis:
            mats.append(tuple(tuple(v[r * 8 + c] for c in range(8)) for r in range(8)))
            degs.append(g)
    return tuple(mats), tuple(degs)


def octonion_derivation_coords(M) -> list:
    """Coordinates of a derivation of O (8x8 matrix) in the ordered D-basis."""
    der = derivation_algebra("O")
    out = []
    for g in I:
        part = [[M[r][c] if r == STAR[g][c] else ZERO for c in range(8)] for r in range(8)]
        out += _flat_coords_in_component(der.components[g], part)
    # whatever remains must vanish (degree 0 part of der(O) is zero)
    for c in range(8):
        if M[c][c]:
            raise ValueError("not a derivation of O")
    return out


def _mat_commutator(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]


def build_tits(label: str) -> LiePresentation:
    """Structure constants of T(C) over the ordered basis der(O) | e_i (x) u_k | der(J)."""
    J = jordan_algebra(label)
    s = sign_table()
    Dmats, Ddegs = _octonion_derivation_basis()
    nD = len(Dmats)
    d0 = J.dim0
    derJ = J.derivation_matrices()
    nJ = len(derJ)
    offM = nD
    offJ = nD + 7 * d0

    labels, degrees, kinds = [], [], []
    for t, g in enumerate(Ddegs):
        labels.append(f"D{g}.{t % 2}")
        degrees.append(g)
        kinds.append("D")
    for i in I:
        for k in range(d0):
            labels.append(f"e{i}*u{k}")
            degrees.append(i)
            kinds.append("M")
    for t in range(nJ):
        labels.append(f"derJ.{t}")
        degrees.append(0)
        kinds.append("J")

    def m_index(i, k):
        return offM + (i - 1) * d0 + k

    # Jordan tables on the J0 basis
    u = [J.j0_vector(k) for k in range(d0)]
    prod = [[J.mul(u[a], u[b]) for b in range(d0)] for a in range(d0)]
    tr = [[J.trace(prod[a][b]) for b in range(d0)] for a in range(d0)]
    star = [[J.to_j0(tuple(x - THIRD * tr[a][b] if c < 3 else x for c, x in enumerate(prod[a][b])))
             for b in range(d0)] for a in range(d0)]
    R = [J.r_operator(v) for v in u]
    RR = {}
    for a in range(d0):
        for b in range(a + 1, d0):
            M = (R[a] @ R[b]) - (R[b] @ R[a])
            RR[(a, b)] = J.derivation_coords(M, check=False) if M.nnz else [ZERO] * nJ
    act = [[J.to_j0(tuple(D.matvec(u[k]))) for k in range(d0)] for D in derJ]

    # octonion data
    Dab = {}
    for i in I:
        for j in I:
            if i < j:
                Dab[(i, j)] = octonion_derivation_coords(d_operator(i, j))

    C: dict = {}

    def put(i, j, vec):
        vec = {k: v for k, v in vec.items() if v}
        if not vec:
            return
        if i < j:
            C[(i, j)] = vec
        else:
            C[(j, i)] = {k: -v for k, v in vec.items()}

    # [der O, der O]
    for p in range(nD):
        for q in range(p + 1, nD):
            comm = _mat_commutator(Dmats[p], Dmats[q])
            if any(any(r) for r in comm):
                put(p, q, dict(enumerate(octonion_derivation_coords(comm))))
    # [d, e_j (x) u] = d(e_j) (x) u
    for p in range(nD):
        g = Ddegs[p]
        for j in I:
            t = STAR[g][j]
            if t == 0:
                continue
            lam = Dmats[p][t][j]
            if lam:
                for k in range(d0):
                    put(p, m_index(j, k), {m_index(t, k): lam})
    # [e_i (x) u_a, e_j (x) u_b]
    for i in I:
        for j in I:
            for a in range(d0):
                for b in range(d0):
                    P, Qi = m_index(i, a), m_index(j, b)
                    if P >= Qi:
                        continue
                    vec: dict = {}
                    if i == j:
                        if a != b:
                            rr = RR[(a, b)] if a < b else [-x for x in RR[(b, a)]]
                            for t, x in enumerate(rr):
                                if x:
                                    vec[offJ + t] = -4 * x
                    else:
                        key = (i, j) if i < j else (j, i)
                        sgn = 1 if i < j else -1
                        if tr[a][b]:
                            for t, x in enumerate(Dab[key]):
                                if x:
                                    vec[t] = THIRD * tr[a][b] * sgn * x
                        w = STAR[i][j]
                        for c, x in enumerate(star[a][b]):
                            if x:
                                vec[m_index(w, c)] = 2 * s[i][j] * x
                    put(P, Qi, vec)
    # [e_i (x) u, D] = -e_i (x) D(u)
    for i in I:
        for a in range(d0):
            for t in range(nJ):
                img = act[t][a]
                put(m_index(i, a), offJ + t, {m_index(i, c): -x for c, x in enumerate(img) if x})
    # [der J, der J]
    for p in range(nJ):
        for q in range(p + 1, nJ):
            M = (derJ[p] @ derJ[q]) - (derJ[q] @ derJ[p])
            if M.nnz:
                put(offJ + p, offJ + q, {offJ + t: x for t, x in enumerate(J.derivation_coords(M, check=False))})

    L = {0: tuple(range(offJ, offJ + nJ))}
    D = {i: tuple(p for p in range(nD) if Ddegs[p] == i) for i in I}
    M = {i: tuple(m_index(i, k) for k in range(d0)) for i in I}
    for i in I:
        L[i] = D[i] + M[i]
    dec = BlockDecomposition(L, D, M)
    return LiePresentation(label, labels, degrees, C, kinds, decomposition=dec)


# -- persistence --------------------------------------------------------------


def _fmt(v: Q) -> str:
    return f"{int(v.numerator)}/{int(v.denominator)}"


def format_constants(L: LiePresentation) -> str:
    lines = [f"dim={L.n} algebra={L.algebra} version=1"]
    for (i, j) in sorted(L.constants):
        vec = L.constants[(i, j)]
        for k in sorted(vec):
            lines.append(f"{i} {j} {k} {_fmt(vec[k])}")
    for i, d in enumerate(L.degrees):
        lines.append(f"deg {i} {d}")
    return "\n".join(lines) + "\n"


def parse_constants(text: str) -> LiePresentation:
    it = iter(text.splitlines())
    head = next(it).split()
    meta = dict(x.split("=") for x in head)
    if meta.get("version") != "1":
        raise ValueError("unsupported structure-constant file version")
    n, label = int(meta["dim"]), meta["algebra"]
    C: dict = {}
    degs = [None] * n
    for line in it:
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "deg":
            degs[int(parts[1])] = int(parts[2])
            continue
        i, j, k = int(parts[0]), int(parts[1]), int(parts[2])
        if not i < j:
            raise ValueError(f"constants must be stored with i < j: {line!r}")
        C.setdefault((i, j), {})[k] = Q(parts[3])
    if any(d is None for d in degs):
        raise ValueError("missing degree lines")
    ref = _skeleton(label)
    if ref["n"] != n:
        raise ValueError("dimension does not match the algebra label")
    return LiePresentation(label, ref["labels"], degs, C, ref["kinds"], decomposition=ref["dec"])


def _skeleton(label):
    J = jordan_algebra(label)
    d0, nJ = J.dim0, J.derivations.dim
    labels, kinds = [], []
    for g in I:
        for t in range(2):
            labels.append(f"D{g}.{t}")
            kinds.append("D")
    for i in I:
        for k in range(d0):
            labels.append(f"e{i}*u{k}")
            kinds.append("M")
    for t in range(nJ):
        labels.append(f"derJ.{t}")
        kinds.append("J")
    offJ = 14 + 7 * d0
    D = {i: (2 * (i - 1), 2 * (i - 1) + 1) for i in I}
    M = {i: tuple(14 + (i - 1) * d0 + k for k in range(d0)) for i in I}
    Lb = {0: tuple(range(offJ, offJ + nJ))}
    for i in I:
        Lb[i] = D[i] + M[i]
    return {"n": len(labels), "labels": labels, "kinds": kinds, "dec": BlockDecomposition(Lb, D, M)}


def cache_path(label: str, directory: str | os.PathLike | None = None) -> Path | None:
    directory = directory or os.environ.get(CACHE_ENV)
    if not directory:
        return None
    return Path(directory) / f"tits_{label}.txt"


_BUILT: dict = {}


def tits(label: str) -> LiePresentation:
    """Memoised T(C); read from / written to the cache directory when one is configured."""
    if label in _BUILT:
        return _BUILT[label]
    path = cache_path(label)
    if path is not None and path.exists():
        L = parse_constants(path.read_text())
    else:
        L = build_tits(label)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(format_constants(L))
    _BUILT[label] = L
    return L


# -- Jacobi ---------------------------------------------------------------------


def _sorted_witness(*idx):
    return tuple(sorted(idx))


def integer_adjoint(L: LiePresentation) -> list:
    """ad[i][j] = {k: den * c_k(i, j)} with Python ints, both orders stored."""
    key = "integer_adjoint"
    if key not in L.cache:
        den = L.denominator
        ad: list = [dict() for _ in range(L.n)]
        for (i, j), vec in L.constants.items():
            ad[i][j] = {k: int(v * den) for k, v in vec.items()}
            ad[j][i] = {k: -int(v * den) for k, v in vec.items()}
        L.cache[key] = ad
    return L.cache[key]


def _jacobi_zero(ad, i: int, j: int, k: int) -> bool:
    out: dict = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        inner = ad[b].get(c)
        if not inner:
            continue
        outer = ad[a]
        for w, v in inner.items():
            r = outer.get(w)
            if r:
                for o, x in r.items():
                    out[o] = out.get(o, 0) + v * x
    return not any(out.values())


def _block_triple_is_trivial(L: LiePresentation, g: int, h: int, k: int) -> bool:
    """True when every double bracket on L_g x L_h x L_k vanishes for degree reasons."""
    for a, b, c in ((g, h, k), (h, k, g), (k, g, h)):
        if L.block(b, c) is not None and L.block(a, STAR[b][c]) is not None:
            return False
    return True


def verify_jacobi(L: LiePresentation, mode: str = "blocked", seed: int = 0, count: int = 2000) -> JacobiResult:
    """Exact Jacobi check on basis triples.

    ``exhaustive`` visits all C(n, 3) triples i < j < k; ``blocked`` iterates
    degree triples g <= h <= k first and skips those whose double-bracket
    blocks are structurally zero; ``sampled`` tests ``count`` seeded random
    triples.  The witness is the first failing sorted basis triple.
    """
    if mode == "exhaustive":
        ad = integer_adjoint(L)
        n, checked = L.n, 0
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    checked += 1
                    if not _jacobi_zero(ad, i, j, k):
                        return JacobiResult(False, checked, (i, j, k), mode)
        return JacobiResult(True, checked, None, mode)
    if mode == "blocked":
        ad = integer_adjoint(L)
        checked = 0
        for g in I0:
            for h in I0[g:]:
                for k in I0[h:]:
                    if _block_triple_is_trivial(L, g, h, k):
                        continue
                    Bg, Bh, Bk = L.blocks[g], L.blocks[h], L.blocks[k]
                    for x in Bg:
                        for y in Bh:
                            if h == g and y <= x:
                                continue
                            for z in Bk:
                                if k == h and z <= y:
                                    continue
                                checked += 1
                                if not _jacobi_zero(ad, x, y, z):
                                    return JacobiResult(False, checked, _sorted_witness(x, y, z), mode)
        return JacobiResult(True, checked, None, mode)
    if mode == "sampled":
        rng = random.Random(seed)
        n = L.n
        for t in range(count):
            i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if jacobiator(L, i, j, k):
                return JacobiResult(False, t + 1, _sorted_witness(i, j, k), mode)
        return JacobiResult(True, count, None, mode)
    raise ValueError(f"unknown Jacobi mode {mode!r}")


def jacobiator(L: LiePresentation, i: int, j: int, k: int) -> dict:
    """Nonzero entries of [b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]]."""
    out: dict = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for w, v in L.bracket_basis(b, c).items():
            for o, x in L.bracket_basis(a, w).items():
                out[o] = out.get(o, ZERO) + v * x
    return {o: v for o, v in out.items() if v}


# -- Killing form -----------------------------------------------------------------


def killing_partial(L: LiePresentation, g: int, h: int):
    """den^2 * sum over y in L_h of tr(ad a ad b) contributions, for a, b in L_g (int array)."""
    key = ("killing_partial", g, h)
    root = L if not L.is_01_contraction else L.root
    if L.is_01_contraction:
        # partials of a 0/1 contraction are scaled copies of the root's
        e = L.eps[g][h] * L.eps[g][STAR[g][h]]
        if not e:
            return None
        return killing_partial(root, g, h)
    if key in L.cache:
        return L.cache[key]
    A = L.block(g, h)  # [b, y] -> w in L_gh
    B = L.block(g, STAR[g][h])  # [a, w] -> y in L_h
    out = None
    if A is not None and B is not None:
        out = tensors.einsum("byw,awy->ab", A, B)
    L.cache[key] = out
    return out


def killing_block(L: LiePresentation, g: int) -> list:
    """Killing form restricted to L_g as a rational matrix (other blocks are orthogonal)."""
    n = len(L.blocks[g])
    acc = np.zeros((n, n), dtype=object)
    for h in I0:
        P = killing_partial(L, g, h)
        if P is not None:
            acc = acc + tensors.as_object(P)
    den2 = L.denominator ** 2
    return [[Q(int(acc[a, b]), den2) for b in range(n)] for a in range(n)]


def killing_form(L: LiePresentation) -> list:
    """Full n x n Killing matrix kappa(b_i, b_j) = tr(ad b_i ad b_j)."""
    K = [[ZERO] * L.n for _ in range(L.n)]
    for g in I0:
        idx = L.blocks[g]
        Kg = killing_block(L, g)
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                K[i][j] = Kg[a][b]
    return K


def killing_form_direct(L: LiePresentation) -> list:
    """Killing matrix from dense adjoint matrices, ignoring the grading (reference path)."""
    n, den = L.n, L.denominator
    Cd = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), vec in L.constants.items():
        for k, v in vec.items():
            x = int(v * den)
            Cd[i, j, k] = x
            Cd[j, i, k] = -x
    # ad(b_i)[o, w] = C[i, w, o];  kappa(i, j) = sum_{w,o} C[i,w,o] C[j,o,w]
    K = tensors.einsum("iwo,jow->ij", Cd, Cd)
    return [[Q(int(K[i, j]), den * den) for j in range(n)] for i in range(n)]


def is_killing_nondegenerate(L: LiePresentation) -> bool:
    return all(rank(killing_block(L, g)) == len(L.blocks[g]) for g in I0 if L.blocks[g])


# -- distinguished subalgebras ------------------------------------------------------


def distinguished_subalgebra(L: LiePresentation, kind: str, param=None) -> Subspace:
    """``der_j`` -> L_0; ``innstr`` (param j) -> L_0 + M_j; ``tkk`` (param: a Fano line) ->
    L_0 + the M_i on the line + the three D_{e_a,e_b} with a, b on the line.

    ``line_blocks`` returns the full block union L_0 + sum of L_i over the line; it is
    tkk(J) plus a commuting sl2 made of the derivations killing the quaternion
    subalgebra of the line.
    """
    dec = L.decomposition
    if kind == "der_j":
        return Subspace.coordinate(L.n, dec.L[0])
    if kind == "innstr":
        if param not in I:
            raise ValueError("innstr needs an index j in I")
        return Subspace.coordinate(L.n, dec.L[0] + dec.M[param])
    if kind in ("tkk", "line_blocks"):
        line = tuple(sorted(param)) if param is not None else None
        if line not in LINES:
            raise ValueError(f"{param!r} is not a Fano line")
        if kind == "line_blocks":
            return Subspace.coordinate(L.n, dec.L[0] + sum((dec.L[i] for i in line), ()))
        vecs = []
        for idx in dec.L[0] + sum((dec.M[i] for i in line), ()):
            v = [ZERO] * L.n
            v[idx] = ONE
            vecs.append(v)
        a, b, c = line
        vecs += [d_element(L, a, b), d_element(L, a, c), d_element(L, b, c)]
        return Subspace.span(L.n, vecs)
    raise ValueError(f"unknown subalgebra kind {kind!r}")


# -- linear maps between presentations ----------------------------------------------


class BlockMap:
    """Linear map sending L_g onto L_sigma(g) with rational local matrices.

    ``local[g]`` is an (n_sigma(g) x n_g) matrix in block coordinates (column = image).
    """

    def __init__(self, sigma, local: dict):
        self.sigma = tuple(sigma)
        self.local = local

    def dense(self, L: LiePresentation) -> list:
        F = [[ZERO] * L.n for _ in range(L.n)]
        for g, M in self.local.items():
            src, dst = L.blocks[g], L.blocks[self.sigma[g]]
            for a, i in enumerate(src):
                for b, j in enumerate(dst):
                    if M[b][a]:
                        F[j][i] = M[b][a]
        return F

    def apply(self, L: LiePresentation, x) -> list:
        out = [ZERO] * L.n
        for g, M in self.local.items():
            src, dst = L.blocks[g], L.blocks[self.sigma[g]]
            for a, i in enumerate(src):
                if x[i]:
                    for b, j in enumerate(dst):
                        if M[b][a]:
                            out[j] += M[b][a] * x[i]
        return out


def block_map_from_dense(F, L: LiePresentation) -> BlockMap | None:
    """Detect the block-permuting structure of a dense matrix; None when it is not block-permuting."""
    sigma = [None] * 8
    local = {}
    for g in I0:
        src = L.blocks[g]
        targets = set()
        for i in src:
            for j in range(L.n):
                if F[j][i]:
                    targets.add(L.degrees[j])
        if len(targets) != 1:
            return None
        t = targets.pop()
        if len(L.blocks[t]) != len(src):
            return None
        sigma[g] = t
        dst = L.blocks[t]
        local[g] = [[Q(F[j][i]) for i in src] for j in dst]
    if sorted(sigma) != list(I0):
        return None
    return BlockMap(sigma, local)


def _int_matrix(M, scale: int) -> np.ndarray:
    rows = [[int(Q(x) * scale) for x in r] for r in M]
    A = np.array(rows, dtype=object)
    if A.size and max(abs(int(x)) for x in A.flat) < 2**31:
        return A.astype(np.int64)
    return A


def is_block_homomorphism(f: BlockMap, A: LiePresentation, B: LiePresentation) -> tuple[bool, tuple | None]:
    """Exact check f([x, y]_A) = [f x, f y]_B on all pairs of basis vectors; returns (ok, witness degrees)."""
    sigma = f.sigma
    delta = 1
    for M in f.local.values():
        for r in M:
            for x in r:
                delta = lcm(delta, int(Q(x).denominator))
    N = {g: _int_matrix(M, delta) for g, M in f.local.items()}
    dA, dB = A.denominator, B.denominator
    for g in I0:
        for h in I0:
            gh = STAR[g][h]
            TA = A.block(g, h)
            TB = B.block(sigma[g], sigma[h])
            lhs = None
            if TA is not None:
                # f applied to the output index: (N_gh @ TA[x, y, :])
                lhs = tensors.einsum("xyw,ow->xyo", TA, N[gh])
                lhs = tensors.scale(lhs, delta * dB)
                lhs_deg = sigma[gh]
            rhs = None
            if TB is not None:
                t = tensors.einsum("aby,ax->xby", TB, N[g])
                t = tensors.einsum("xbo,by->xyo", t, N[h])
                rhs = tensors.scale(t, dA)
                rhs_deg = STAR[sigma[g]][sigma[h]]
            if lhs is None and rhs is None:
                continue
            if lhs is None:
                if not tensors.is_zero(rhs):
                    return False, (g, h)
                continue
            if rhs is None:
                if not tensors.is_zero(lhs):
                    return False, (g, h)
                continue
            if lhs_deg != rhs_deg:
                if not (tensors.is_zero(lhs) and tensors.is_zero(rhs)):
                    return False, (g, h)
                continue
            diff = tensors.add(lhs, tensors.scale(rhs, -1))
            if not tensors.is_zero(diff):
                return False, (g, h)
    return True, None


def is_invertible_block_map(f: BlockMap) -> bool:
    return all(rank(M) == len(M) == len(M[0]) for M in f.local.values() if M)


# -- Weyl lifts -----------------------------------------------------------------------


class InconsistentLift(ValueError):
    pass


def octonion_sign_twist(sigma) -> tuple[int, ...]:
    """Signs eta (eta_0 = 1) making e_i -> eta_i e_sigma(i) an automorphism of O.

    Returns the lexicographically first solution (with +1 < -1); every
    collineation admits eight of them.
    """
    s = sign_table()
    from itertools import product

    for tail in product((1, -1), repeat=7):
        eta = (1,) + tail
        if all(s[sigma[i]][sigma[j]] * eta[i] * eta[j] == eta[STAR[i][j]] * s[i][j] for i in I0 for j in I0):
            return eta
    raise InconsistentLift("no signed basis permutation realises this collineation on O")


def weyl_lift(sigma, L: LiePresentation, literal: bool = False, verify: bool = True) -> BlockMap:
    """Lift a collineation to a graded automorphism of T(C).

    D_{e_i,e_j} -> eta_i eta_j D_{e_sigma(i), e_sigma(j)}, e_i (x) u -> eta_i e_sigma(i) (x) u,
    identity on der(J).  With ``literal=True`` all eta_i are taken to be 1.
    """
    if tuple(sigma) not in collineation_group():
        raise ValueError("sigma is not a collineation")
    eta = (1,) * 8 if literal else octonion_sign_twist(sigma)
    dec = L.decomposition
    # D-part: solve W a_ij = b_ij for the 21 prescribed images
    src, dst = [], []
    for i in I:
        for j in I:
            if i < j:
                src.append(octonion_derivation_coords(d_operator(i, j)))
                dst.append([eta[i] * eta[j] * x for x in octonion_derivation_coords(d_operator(sigma[i], sigma[j]))])
    nD = 14
    # unknown W[r][c] at position r*nD + c; equations sum_c W[r][c] a[c] = b[r]
    rows, rhs = [], []
    for a, b in zip(src, dst):
        for r in range(nD):
            row = [ZERO] * (nD * nD)
            for c in range(nD):
                row[r * nD + c] = a[c]
            rows.append(row)
            rhs.append(b[r])
    w = solve(rows, rhs)
    if w is None:
        raise InconsistentLift("prescribed images of the D_{e_i,e_j} are inconsistent")
    W = [[w[r * nD + c] for c in range(nD)] for r in range(nD)]
    local = {}
    d0 = len(dec.M[1])
    for i in I:
        t = sigma[i]
        # block L_i = D_i + M_i -> L_t = D_t + M_t
        Di, Dt = dec.D[i], dec.D[t]
        M = [[ZERO] * (2 + d0) for _ in range(2 + d0)]
        for a, p in enumerate(Di):
            for b, q in enumerate(Dt):
                M[b][a] = W[q][p]
        # any leakage of W outside D_t -> D_t would break the block structure
        for p in Di:
            for q in range(nD):
                if q not in Dt and W[q][p]:
                    raise InconsistentLift("lifted derivation map is not graded")
        for k in range(d0):
            M[2 + k][2 + k] = Q(eta[i])
        local[i] = M
    nJ = len(dec.L[0])
    local[0] = [[ONE if a == b else ZERO for a in range(nJ)] for b in range(nJ)]
    f = BlockMap(sigma, local)
    if verify:
        ok, where = is_block_homomorphism(f, L, L)
        if not ok or not is_invertible_block_map(f):
            raise InconsistentLift(f"lift is not an automorphism (first failing degree pair {where})")
    return f


# -- homogeneous elements in coordinates ----------------------------------------------


def m_element(L: LiePresentation, i: int, u) -> list:
    """Coordinates of e_i (x) u for u in J0 (given in J coordinates)."""
    J = jordan_algebra(L.algebra)
    v = [ZERO] * L.n
    for idx, x in zip(L.decomposition.M[i], J.to_j0(tuple(u))):
        v[idx] = x
    return v


def derj_element(L: LiePresentation, D) -> list:
    """Coordinates of a derivation of J (SparseMatrix on J coordinates)."""
    J = jordan_algebra(L.algebra)
    v = [ZERO] * L.n
    for idx, x in zip(L.decomposition.L[0], J.derivation_coords(D)):
        v[idx] = x
    return v


def d_element(L: LiePresentation, a: int, b: int) -> list:
    """Coordinates of D_{e_a, e_b} in the der(O) part."""
    v = [ZERO] * L.n
    for idx, x in enumerate(octonion_derivation_coords(d_operator(a, b))):
        v[idx] = x
    return v


def m_part(L: LiePresentation, x, i: int) -> tuple:
    """The J0 factor of the O_{g_i} (x) J0 component of x, in J coordinates."""
    J = jordan_algebra(L.algebra)
    return J.from_j0([x[idx] for idx in L.decomposition.M[i]])


def derj_part(L: LiePresentation, x):
    """The der(J) component of x as an operator on J."""
    J = jordan_algebra(L.algebra)
    mats = J.derivation_matrices()
    out = None
    for idx, D in zip(L.decomposition.L[0], mats):
        c = x[idx]
        if c:
            term = D.scale(c)
            out = term if out is None else out + term
    return out if out is not None else D.scale(0)


def d_part(L: LiePresentation, x) -> list:
    return [x[idx] for idx in range(14)]
