"""Hurwitz algebras F ⊂ K ⊂ H ⊂ O on the Fano-plane basis e_0 = 1, e_1, ..., e_7."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product

from .fano import I, I0, LINES, STAR
from .linalg import ONE, ZERO, Q, Subspace, kernel_from_equations

INDEX_SETS = {"F": (0,), "K": (0, 1), "H": (0, 1, 2, 5), "O": I0}

# oriented lines (a, b, c) meaning e_a e_b = e_c, read off the Fano figure
FIGURE_ORIENTATION = ((1, 2, 5), (5, 6, 7), (7, 4, 1), (2, 6, 4), (7, 3, 2), (5, 3, 4), (1, 3, 6))


def signs_from_orientation(oriented) -> tuple[tuple[int, ...], ...]:
    s = [[0] * 8 for _ in I0]
    for j in I0:
        s[0][j] = s[j][0] = 1
    for i in I:
        s[i][i] = -1
    for a, b, c in oriented:
        for x, y in ((a, b), (b, c), (c, a)):
            s[x][y] = 1
            s[y][x] = -1
    return tuple(tuple(r) for r in s)


def _mul_basis(s, i, j):
    return s[i][j], STAR[i][j]


def _mul_vec(s, a, b):
    out = [0] * 8
    for i in I0:
        if a[i]:
            for j in I0:
                if b[j]:
                    out[STAR[i][j]] += s[i][j] * a[i] * b[j]
    return out


def is_alternative(s) -> bool:
    """Linearised left and right alternative laws on all basis triples."""
    def assoc(i, j, k):
        e = [[0] * 8 for _ in I0]
        for t in I0:
            e[t][t] = 1
        return [x - y for x, y in zip(_mul_vec(s, _mul_vec(s, e[i], e[j]), e[k]), _mul_vec(s, e[i], _mul_vec(s, e[j], e[k])))]

    cache = {(i, j, k): assoc(i, j, k) for i in I0 for j in I0 for k in I0}
    for i, j, k in product(I0, repeat=3):
        a = cache[(i, j, k)]
        if any(x + y for x, y in zip(a, cache[(j, i, k)])):
            return False
        if any(x + y for x, y in zip(a, cache[(i, k, j)])):
            return False
    return True


def norm_is_multiplicative_on_basis_pairs(s) -> bool:
    # n(x y) = n(x) n(y) for x = e_a + e_b, y = e_c + e_d covers the bilinear identities
    for a, b, c, d in product(I0, repeat=4):
        x = [0] * 8
        y = [0] * 8
        x[a] += 1
        x[b] += 1
        y[c] += 1
        y[d] += 1
        xy = _mul_vec(s, x, y)
        if sum(t * t for t in xy) != sum(t * t for t in x) * sum(t * t for t in y):
            return False
    return True


def orientation_survivors() -> list[tuple[int, ...]]:
    """Brute force over the 128 line orientations; returns surviving bit vectors.

    Bit ``k`` refers to ``LINES[k] = (a, b, c)`` (sorted): 0 orients it as e_a e_b = e_c,
    1 as e_a e_c = e_b.  Survivors give an alternative algebra with multiplicative
    norm and e_2 e_5 = e_1.  Output is in lexicographic order of the bit vectors.
    """
    out = []
    for bits in product((0, 1), repeat=len(LINES)):
        s = signs_from_orientation(_oriented(bits))
        if s[2][5] != 1:
            continue
        if is_alternative(s) and norm_is_multiplicative_on_basis_pairs(s):
            out.append(bits)
    return out


def _oriented(bits):
    return [(a, b, c) if t == 0 else (a, c, b) for (a, b, c), t in zip(LINES, bits)]


def orientation_bits(oriented) -> tuple[int, ...]:
    target = signs_from_orientation(oriented)
    for bits in product((0, 1), repeat=len(LINES)):
        if signs_from_orientation(_oriented(bits)) == target:
            return bits
    raise ValueError("not an orientation of the Fano lines")


def format_sign_table(s) -> str:
    return "".join(f"{i} {j} {'+1' if s[i][j] > 0 else '-1'}\n" for i in I0 for j in I0)


def parse_sign_table(text: str) -> tuple[tuple[int, ...], ...]:
    s = [[0] * 8 for _ in I0]
    seen = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        i, j, v = line.split()
        i, j = int(i), int(j)
        if v not in ("+1", "-1"):
            raise ValueError(f"bad sign {v!r}")
        s[i][j] = int(v)
        seen.add((i, j))
    if len(seen) != 64:
        raise ValueError("sign table must list all 64 pairs")
    return tuple(tuple(r) for r in s)


@lru_cache(maxsize=None)
def sign_table() -> tuple[tuple[int, ...], ...]:
    """Canonical signs s(i, j) with e_i e_j = s(i, j) e_{i*j}, from the packaged data file."""
    text = resources.files("gradcon").joinpath("data/octonion_signs.txt").read_text()
    return parse_sign_table(text)


# -- algebras and elements ----------------------------------------------------


@dataclass(frozen=True)
class HurwitzAlgebra:
    label: str
    index: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.index)

    @property
    def signs(self):
        return sign_table()

    def pos(self, i: int) -> int:
        return self.index.index(i)

    def e(self, i: int) -> "CompositionElement":
        c = [ZERO] * self.dim
        c[self.pos(i)] = ONE
        return CompositionElement(self, tuple(c))

    def element(self, coeffs) -> "CompositionElement":
        """Element from a dict {i: coefficient} or a sequence in index order."""
        if isinstance(coeffs, dict):
            c = [ZERO] * self.dim
            for i, v in coeffs.items():
                c[self.pos(i)] = Q(v)
            return CompositionElement(self, tuple(c))
        if len(coeffs) != self.dim:
            raise ValueError("wrong number of coordinates")
        return CompositionElement(self, tuple(Q(v) for v in coeffs))

    def zero(self) -> "CompositionElement":
        return CompositionElement(self, (ZERO,) * self.dim)

    def one(self) -> "CompositionElement":
        return self.e(0)

    def basis(self) -> list["CompositionElement"]:
        return [self.e(i) for i in self.index]

    def mul_coords(self, a, b) -> tuple:
        s = sign_table()
        idx = self.index
        out = [ZERO] * 8
        for p, i in enumerate(idx):
            x = a[p]
            if not x:
                continue
            for q, j in enumerate(idx):
                y = b[q]
                if y:
                    out[STAR[i][j]] += s[i][j] * x * y
        return tuple(out[i] for i in idx)


@lru_cache(maxsize=None)
def hurwitz(label: str) -> HurwitzAlgebra:
    if label not in INDEX_SETS:
        raise ValueError(f"algebra label must be one of F, K, H, O; got {label!r}")
    return HurwitzAlgebra(label, INDEX_SETS[label])


@dataclass(frozen=True)
class CompositionElement:
    algebra: HurwitzAlgebra
    coords: tuple

    def _same(self, other: "CompositionElement"):
        if not isinstance(other, CompositionElement) or other.algebra != self.algebra:
            raise TypeError("operands belong to different Hurwitz algebras")

    def __add__(self, other):
        self._same(other)
        return CompositionElement(self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return CompositionElement(self.algebra, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return CompositionElement(self.algebra, tuple(-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, CompositionElement):
            return mul(self, other)
        return CompositionElement(self.algebra, tuple(Q(other) * x for x in self.coords))

    def __rmul__(self, other):
        return CompositionElement(self.algebra, tuple(Q(other) * x for x in self.coords))

    def __getitem__(self, i: int):
        return self.coords[self.algebra.pos(i)]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        terms = [f"{x}*e{i}" for i, x in zip(self.algebra.index, self.coords) if x]
        return " + ".join(terms) if terms else "0"


def mul(a: CompositionElement, b: CompositionElement) -> CompositionElement:
    a._same(b)
    return CompositionElement(a.algebra, a.algebra.mul_coords(a.coords, b.coords))


def conj(a: CompositionElement) -> CompositionElement:
    c = tuple(x if i == 0 else -x for i, x in zip(a.algebra.index, a.coords))
    return CompositionElement(a.algebra, c)


def norm(a: CompositionElement) -> Q:
    return sum((x * x for x in a.coords), ZERO)


def trace(a: CompositionElement) -> Q:
    return 2 * a.coords[0]


def commutator(a, b) -> CompositionElement:
    return mul(a, b) - mul(b, a)


def associator(a, b, c) -> CompositionElement:
    return mul(mul(a, b), c) - mul(a, mul(b, c))


# -- operators on O -----------------------------------------------------------


def _octonion(x) -> CompositionElement:
    if isinstance(x, CompositionElement):
        if x.algebra.label != "O":
            x = embed(x, hurwitz("O"))
        return x
    if isinstance(x, int):
        return hurwitz("O").e(x)
    raise TypeError("expected an octonion or a basis label")


def embed(a: CompositionElement, target: HurwitzAlgebra) -> CompositionElement:
    return target.element({i: x for i, x in zip(a.algebra.index, a.coords)})


def left_matrix(a) -> tuple[tuple, ...]:
    """Matrix of l_a on the e-basis of O (column j = coordinates of a e_j)."""
    a = _octonion(a)
    O = a.algebra
    cols = [mul(a, O.e(j)).coords for j in I0]
    return tuple(tuple(cols[j][i] for j in I0) for i in I0)


def right_matrix(a) -> tuple[tuple, ...]:
    a = _octonion(a)
    O = a.algebra
    cols = [mul(O.e(j), a).coords for j in I0]
    return tuple(tuple(cols[j][i] for j in I0) for i in I0)


def _mm(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n) if A[i][k] and B[k][j]), ZERO) for j in range(n)] for i in range(n)]


def _comm(A, B):
    P, R = _mm(A, B), _mm(B, A)
    return [[x - y for x, y in zip(p, r)] for p, r in zip(P, R)]


def d_operator(a, b) -> tuple[tuple, ...]:
    """D_{a,b} = [l_a, l_b] + [l_a, r_b] + [r_a, r_b] as an 8x8 matrix on O."""
    la, lb, ra, rb = left_matrix(a), left_matrix(b), right_matrix(a), right_matrix(b)
    t1, t2, t3 = _comm(la, lb), _comm(la, rb), _comm(ra, rb)
    return tuple(tuple(t1[i][j] + t2[i][j] + t3[i][j] for j in I0) for i in I0)


def apply_matrix(M, a) -> CompositionElement:
    a = _octonion(a)
    return a.algebra.element([sum((M[i][j] * a.coords[j] for j in I0 if M[i][j]), ZERO) for i in I0])


@dataclass(frozen=True)
class DerivationAlgebra:
    """der(C): a subspace of flattened dim*dim matrices (index out*dim + in).

    For O, ``components[i]`` holds the RREF basis of the degree-g_i part D_i.
    """

    algebra: HurwitzAlgebra
    space: Subspace
    components: dict

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list[tuple[tuple, ...]]:
        n = self.algebra.dim
        return [tuple(tuple(v[r * n + c] for c in range(n)) for r in range(n)) for v in self.space.basis]


def _leibniz_equations(C: HurwitzAlgebra, allowed=None):
    """Rows of d(e_a e_b) - d(e_a) e_b - e_a d(e_b) = 0 in the unknowns d[out][in]."""
    n = C.dim
    idx = C.index
    s = sign_table()
    pos = {i: p for p, i in enumerate(idx)}

    def var(out, inp):
        return pos[out] * n + pos[inp]

    for a in idx:
        for b in idx:
            sab, c = s[a][b], STAR[a][b]
            # component along e_t of each term
            for t in idx:
                row: dict[int, Q] = {}

                def put(k, v):
                    if allowed is not None and k not in allowed:
                        return
                    row[k] = row.get(k, ZERO) + v

                put(var(t, c), Q(sab))
                # d(e_a) e_b: coefficient d[x][a] times e_x e_b, lands on x*b
                x = STAR[t][b]
                put(var(x, a), -Q(s[x][b]))
                y = STAR[a][t]
                put(var(y, b), -Q(s[a][y]))
                row = {k: v for k, v in row.items() if v}
                if row:
                    yield row


@lru_cache(maxsize=None)
def derivation_algebra(label: str) -> DerivationAlgebra:
    """der(C) as the kernel of the Leibniz system; graded split for O."""
    C = hurwitz(label)
    n = C.dim
    full = kernel_from_equations(n * n, _leibniz_equations(C))
    comps = {}
    if label == "O":
        for g in I0:
            allowed = {out * 8 + inp for inp in I0 for out in I0 if out == STAR[g][inp]}
            eqs = ({k: v for k, v in r.items() if k in allowed} for r in _leibniz_equations(C))
            # restricting unknowns: the other variables are forced to vanish
            sub = kernel_from_equations(n * n, list(eqs) + [{k: ONE} for k in range(n * n) if k not in allowed])
            comps[g] = sub
        total = sum(comps[g].dim for g in I0)
        if total != full.dim:
            raise AssertionError("graded pieces of der(O) do not add up")
    return DerivationAlgebra(C, full, comps)
