"""Jordan algebras J = H3(C) of hermitian 3x3 matrices, J0, u*v, R_u and der(J)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .composition import CompositionElement, HurwitzAlgebra, hurwitz, sign_table
from .fano import STAR
from .linalg import ONE, ZERO, Q, SparseMatrix, Subspace, kernel_from_equations

OFF_POSITIONS = ((0, 1), (0, 2), (1, 2))
HALF = Q(1, 2)
THIRD = Q(1, 3)


class JordanAlgebra:
    """H3(C) with the fixed basis E11, E22, E33, then c-entries at (1,2), (1,3), (2,3).

    Coordinates of elements are tuples of length 3*ell + 3 in that basis order.
    The traceless part J0 has basis E11-E22, E22-E33 followed by the off-diagonal vectors.
    """

    def __init__(self, label: str):
        self.C: HurwitzAlgebra = hurwitz(label)
        self.label = label
        self.ell = self.C.dim
        self.dim = 3 * self.ell + 3
        self.dim0 = 3 * self.ell + 2

    def __repr__(self) -> str:
        return f"JordanAlgebra(H3({self.label}))"

    # -- coordinates <-> 3x3 matrices over C
    def _off_index(self, slot: int, p: int) -> int:
        return 3 + slot * self.ell + p

    def basis_labels(self) -> list[str]:
        out = ["E11", "E22", "E33"]
        for (p, q) in OFF_POSITIONS:
            out += [f"e{i}@{p + 1}{q + 1}" for i in self.C.index]
        return out

    def _to_matrix(self, u) -> list[list[list]]:
        ell = self.ell
        M = [[[ZERO] * ell for _ in range(3)] for _ in range(3)]
        for t in range(3):
            M[t][t][0] = Q(u[t])
        for slot, (p, q) in enumerate(OFF_POSITIONS):
            c = [Q(u[self._off_index(slot, k)]) for k in range(ell)]
            M[p][q] = c
            M[q][p] = [c[0]] + [-x for x in c[1:]]
        return M

    def _matmul(self, A, B):
        C = self.C
        out = [[[ZERO] * self.ell for _ in range(3)] for _ in range(3)]
        for p in range(3):
            for r in range(3):
                acc = [ZERO] * self.ell
                for q in range(3):
                    a, b = A[p][q], B[q][r]
                    if any(a) and any(b):
                        prod = C.mul_coords(a, b)
                        acc = [x + y for x, y in zip(acc, prod)]
                out[p][r] = acc
        return out

    def _from_matrix(self, M) -> tuple:
        u = [ZERO] * self.dim
        for t in range(3):
            if any(M[t][t][1:]):
                raise ValueError("diagonal entries of a hermitian matrix must be scalars")
            u[t] = M[t][t][0]
        for slot, (p, q) in enumerate(OFF_POSITIONS):
            for k in range(self.ell):
                u[self._off_index(slot, k)] = M[p][q][k]
        return tuple(u)

    def _mul_direct(self, u, v) -> tuple:
        A, B = self._to_matrix(u), self._to_matrix(v)
        P, R = self._matmul(A, B), self._matmul(B, A)
        S = [[[HALF * (x + y) for x, y in zip(P[p][r], R[p][r])] for r in range(3)] for p in range(3)]
        return self._from_matrix(S)

    def unit_vector(self, k: int) -> tuple:
        v = [ZERO] * self.dim
        v[k] = ONE
        return tuple(v)

    @cached_property
    def product_table(self) -> list[list[dict[int, Q]]]:
        """table[a][b] = sparse coordinates of w_a . w_b."""
        n = self.dim
        T = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                w = self._mul_direct(self.unit_vector(a), self.unit_vector(b))
                d = {k: x for k, x in enumerate(w) if x}
                T[a][b] = T[b][a] = d
        return T

    def mul(self, u, v) -> tuple:
        out = [ZERO] * self.dim
        T = self.product_table
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if y:
                    xy = x * y
                    for k, z in T[a][b].items():
                        out[k] += xy * z
        return tuple(out)

    @staticmethod
    def trace(u) -> Q:
        return Q(u[0]) + Q(u[1]) + Q(u[2])

    def one(self) -> tuple:
        return tuple(ONE if k < 3 else ZERO for k in range(self.dim))

    # -- the traceless part
    def j0_vector(self, k: int) -> tuple:
        """k-th J0 basis vector in J coordinates."""
        v = [ZERO] * self.dim
        if k == 0:
            v[0], v[1] = ONE, -ONE
        elif k == 1:
            v[1], v[2] = ONE, -ONE
        else:
            v[k + 1] = ONE
        return tuple(v)

    def to_j0(self, u) -> tuple:
        if self.trace(u):
            raise ValueError("element is not traceless")
        return (Q(u[0]), -Q(u[2])) + tuple(Q(x) for x in u[3:])

    def from_j0(self, c) -> tuple:
        d1, d3 = Q(c[0]), -Q(c[1])
        return (d1, -d1 - d3, d3) + tuple(Q(x) for x in c[2:])

    def star(self, u, v) -> tuple:
        """u*v = u.v - (1/3) tr(u.v) 1, in J coordinates; both inputs traceless."""
        if self.trace(u) or self.trace(v):
            raise ValueError("u*v is defined on J0 only")
        w = self.mul(u, v)
        t = THIRD * self.trace(w)
        return tuple(x - t if k < 3 else x for k, x in enumerate(w))

    # -- operators on J (SparseMatrix, column b = image of basis vector b)
    def r_operator(self, u) -> SparseMatrix:
        ent = {}
        T = self.product_table
        for a, x in enumerate(u):
            if not x:
                continue
            for b in range(self.dim):
                for k, z in T[a][b].items():
                    ent[(k, b)] = ent.get((k, b), ZERO) + Q(x) * z
        return SparseMatrix.from_entries(self.dim, self.dim, ent)

    def inner_derivation(self, u, v) -> SparseMatrix:
        Ru, Rv = self.r_operator(u), self.r_operator(v)
        return (Ru @ Rv) - (Rv @ Ru)

    def flatten(self, M: SparseMatrix) -> dict[int, Q]:
        n = self.dim
        return {r * n + c: x for (r, c), x in M.entries().items()}

    def unflatten(self, v) -> SparseMatrix:
        n = self.dim
        if isinstance(v, dict):
            items = v.items()
        else:
            items = ((k, x) for k, x in enumerate(v) if x)
        return SparseMatrix.from_entries(n, n, {(k // n, k % n): x for k, x in items})

    @cached_property
    def derivations(self) -> Subspace:
        """RREF basis of span{[R_u, R_v]} over pairs of J basis vectors."""
        n = self.dim
        R = [self.r_operator(self.unit_vector(a)) for a in range(n)]
        rows = []
        for a in range(n):
            for b in range(a + 1, n):
                D = (R[a] @ R[b]) - (R[b] @ R[a])
                if D.nnz:
                    rows.append(self.flatten(D))
        return Subspace.from_sparse(n * n, rows)

    def derivation_matrices(self) -> list[SparseMatrix]:
        return [self.unflatten(v) for v in self.derivations.basis]

    def derivation_coords(self, M: SparseMatrix, check: bool = True) -> list[Q]:
        """Coordinates of a derivation in the RREF basis, read at the pivot positions."""
        flat = self.flatten(M)
        sp = self.derivations
        c = [flat.get(p, ZERO) for p in sp.pivots]
        if check:
            recon: dict[int, Q] = {}
            for x, row in zip(c, sp.basis):
                if x:
                    for k, y in enumerate(row):
                        if y:
                            recon[k] = recon.get(k, ZERO) + x * y
            recon = {k: v for k, v in recon.items() if v}
            if recon != {k: v for k, v in flat.items() if v}:
                raise ValueError("matrix is not in der(J)")
        return c

    def leibniz_kernel(self) -> Subspace:
        """der(J) as the kernel of d(w_a.w_b) = d(w_a).w_b + w_a.d(w_b)."""
        n = self.dim
        T = self.product_table

        def eqs():
            for a in range(n):
                for b in range(a, n):
                    rows: dict[int, dict[int, Q]] = {}
                    # d(w_a.w_b)_c = sum_in d[c][in] (w_a.w_b)_in
                    for i, z in T[a][b].items():
                        for c in range(n):
                            r = rows.setdefault(c, {})
                            r[c * n + i] = r.get(c * n + i, ZERO) + z
                    # - sum_x d[x][a] (w_x . w_b)_c  - sum_x d[x][b] (w_a . w_x)_c
                    for x in range(n):
                        for c, z in T[x][b].items():
                            r = rows.setdefault(c, {})
                            r[x * n + a] = r.get(x * n + a, ZERO) - z
                        for c, z in T[a][x].items():
                            r = rows.setdefault(c, {})
                            r[x * n + b] = r.get(x * n + b, ZERO) - z
                    for r in rows.values():
                        r = {k: v for k, v in r.items() if v}
                        if r:
                            yield r

        return kernel_from_equations(n * n, eqs())


@lru_cache(maxsize=None)
def jordan_algebra(label: str) -> JordanAlgebra:
    return JordanAlgebra(label)


@dataclass(frozen=True)
class JordanElement:
    algebra: JordanAlgebra
    coords: tuple

    @classmethod
    def from_parts(cls, J: JordanAlgebra, diag, off) -> "JordanElement":
        """``off`` lists the (1,2), (1,3), (2,3) entries as CompositionElements (or None)."""
        c = [Q(x) for x in diag]
        for e in off:
            if e is None:
                c += [ZERO] * J.ell
            else:
                if e.algebra != J.C:
                    raise TypeError("off-diagonal entry from a different Hurwitz algebra")
                c += list(e.coords)
        return cls(J, tuple(c))

    @property
    def diag(self) -> tuple:
        return self.coords[:3]

    @property
    def off(self) -> tuple[CompositionElement, ...]:
        ell = self.algebra.ell
        return tuple(CompositionElement(self.algebra.C, self.coords[3 + s * ell: 3 + (s + 1) * ell]) for s in range(3))

    def _same(self, other):
        if not isinstance(other, JordanElement) or other.algebra is not self.algebra:
            raise TypeError("Jordan elements over different algebras")

    def __add__(self, other):
        self._same(other)
        return JordanElement(self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return JordanElement(self.algebra, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return JordanElement(self.algebra, tuple(-x for x in self.coords))

    def __rmul__(self, a):
        return JordanElement(self.algebra, tuple(Q(a) * x for x in self.coords))

    def __eq__(self, other):
        return isinstance(other, JordanElement) and other.algebra is self.algebra and all(
            Q(x) == Q(y) for x, y in zip(self.coords, other.coords)
        )

    def __hash__(self):
        return hash(tuple(Q(x) for x in self.coords))

    def trace(self) -> Q:
        return self.algebra.trace(self.coords)

    def __repr__(self) -> str:
        names = self.algebra.basis_labels()
        terms = [f"{x}*{n}" for n, x in zip(names, self.coords) if x]
        return " + ".join(terms) if terms else "0"


def jordan_mul(u: JordanElement, v: JordanElement) -> JordanElement:
    u._same(v)
    return JordanElement(u.algebra, u.algebra.mul(u.coords, v.coords))


def star_mul(u: JordanElement, v: JordanElement) -> JordanElement:
    u._same(v)
    return JordanElement(u.algebra, u.algebra.star(u.coords, v.coords))


def r_operator(u: JordanElement) -> SparseMatrix:
    return u.algebra.r_operator(u.coords)


def inner_derivation(u: JordanElement, v: JordanElement) -> SparseMatrix:
    u._same(v)
    return u.algebra.inner_derivation(u.coords, v.coords)


def apply_operator(M: SparseMatrix, u: JordanElement) -> JordanElement:
    return JordanElement(u.algebra, tuple(M.matvec(u.coords)))


def jordan_derivation_algebra(label: str) -> Subspace:
    return jordan_algebra(label).derivations


# -- helpers over C = F -------------------------------------------------------


def unit_matrix(p: int, q: int) -> list[list[Q]]:
    """e_pq as a 3x3 rational matrix (1-based indices)."""
    M = [[ZERO] * 3 for _ in range(3)]
    M[p - 1][q - 1] = ONE
    return M


def e_plus(p: int, q: int) -> JordanElement:
    """e_pq + e_qp in H3(F)."""
    J = jordan_algebra("F")
    if p == q:
        raise ValueError("e_pp^+ is 2 E_pp; use diagonal units")
    a, b = sorted((p - 1, q - 1))
    slot = OFF_POSITIONS.index((a, b))
    c = [ZERO] * J.dim
    c[3 + slot] = ONE
    return JordanElement(J, tuple(c))


def e_minus(p: int, q: int) -> list[list[Q]]:
    """e_pq - e_qp: a skew-symmetric 3x3 matrix (not an element of J)."""
    M = unit_matrix(p, q)
    M[q - 1][p - 1] -= ONE
    return M


def diagonal(J: JordanAlgebra, d1, d2, d3) -> JordanElement:
    c = [ZERO] * J.dim
    c[0], c[1], c[2] = Q(d1), Q(d2), Q(d3)
    return JordanElement(J, tuple(c))


def skew_ad(x) -> SparseMatrix:
    """ad(x): u -> xu - ux on H3(F) for a skew-symmetric rational 3x3 matrix x."""
    J = jordan_algebra("F")
    cols = {}
    for b in range(J.dim):
        U = [[J._to_matrix(J.unit_vector(b))[p][q][0] for q in range(3)] for p in range(3)]
        XU = [[sum((Q(x[p][k]) * U[k][q] for k in range(3)), ZERO) for q in range(3)] for p in range(3)]
        UX = [[sum((U[p][k] * Q(x[k][q]) for k in range(3)), ZERO) for q in range(3)] for p in range(3)]
        W = [[[XU[p][q] - UX[p][q]] for q in range(3)] for p in range(3)]
        cols[b] = J._from_matrix(W)
    ent = {(k, b): v for b, w in cols.items() for k, v in enumerate(w) if v}
    return SparseMatrix.from_entries(J.dim, J.dim, ent)


def skew_add(*terms):
    out = [[ZERO] * 3 for _ in range(3)]
    for coef, M in terms:
        for p in range(3):
            for q in range(3):
                out[p][q] += Q(coef) * M[p][q]
    return out
