"""Exact rational linear algebra: echelon forms, kernels, subspaces, sparse matrices.

Rationals are ``gmpy2.mpq``.  Pivoting is deterministic (leftmost column, first
row that has it), so every basis produced here is reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def as_q(x) -> mpq:
    if isinstance(x, str):
        return mpq(x)
    return mpq(x)


class DimensionError(ValueError):
    pass


class SparseMatrix:
    """Row-major dict-of-dicts matrix; zero entries are never stored."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, mpq]] = {}
        if rows:
            for r, row in rows.items():
                clean = {c: as_q(v) for c, v in row.items() if v}
                if clean:
                    self.rows[r] = clean

    @classmethod
    def from_dense(cls, M: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(M)
        ncols = len(M[0]) if nrows else 0
        rows = {}
        for r, row in enumerate(M):
            if len(row) != ncols:
                raise DimensionError("ragged matrix")
            rows[r] = {c: v for c, v in enumerate(row) if v}
        return cls(nrows, ncols, rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: dict) -> "SparseMatrix":
        rows: dict[int, dict[int, mpq]] = {}
        for (r, c), v in entries.items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise DimensionError(f"entry ({r},{c}) outside {nrows}x{ncols}")
            if v:
                rows.setdefault(r, {})[c] = as_q(v)
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    def __getitem__(self, rc) -> mpq:
        r, c = rc
        return self.rows.get(r, {}).get(c, ZERO)

    def entries(self) -> dict:
        return {(r, c): v for r, row in self.rows.items() for c, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def to_dense(self) -> list[list[mpq]]:
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        rows: dict[int, dict[int, mpq]] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return SparseMatrix(self.ncols, self.nrows, rows)

    def matvec(self, v: Sequence) -> list[mpq]:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.ncols} columns")
        out = [ZERO] * self.nrows
        for r, row in self.rows.items():
            s = ZERO
            for c, x in row.items():
                if v[c]:
                    s += x * v[c]
            out[r] = s
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise DimensionError("inner dimensions differ")
        rows: dict[int, dict[int, mpq]] = {}
        for r, row in self.rows.items():
            acc: dict[int, mpq] = {}
            for k, x in row.items():
                for c, y in other.rows.get(k, {}).items():
                    acc[c] = acc.get(c, ZERO) + x * y
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        return SparseMatrix(self.nrows, other.ncols, rows)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        ent = self.entries()
        for k, v in other.entries().items():
            ent[k] = ent.get(k, ZERO) - v
        return SparseMatrix.from_entries(self.nrows, self.ncols, ent)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        ent = self.entries()
        for k, v in other.entries().items():
            ent[k] = ent.get(k, ZERO) + v
        return SparseMatrix.from_entries(self.nrows, self.ncols, ent)

    def scale(self, a) -> "SparseMatrix":
        a = as_q(a)
        return SparseMatrix(self.nrows, self.ncols, {r: {c: a * v for c, v in row.items()} for r, row in self.rows.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


class Echelon:
    """Incrementally maintained row echelon basis of sparse rational vectors.

    Every stored row has its pivot as its smallest column and pivot entry 1.
    """

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, mpq]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {c: x for c, x in v.items() if x}
        rows = self.rows
        done: dict[int, mpq] = {}
        while v:
            c = min(v)
            x = v.pop(c)
            row = rows.get(c)
            if row is None:
                done[c] = x
                continue
            for k, y in row.items():
                if k == c:
                    continue
                nv = v.get(k, ZERO) - x * y
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return done

    def add(self, v: dict) -> bool:
        """Insert ``v``; returns True when it was independent of the current rows."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        self.rows[p] = {c: x * inv for c, x in r.items()}
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def rref_rows(self) -> list[dict[int, mpq]]:
        """Fully reduced rows sorted by pivot."""
        piv = sorted(self.rows)
        red: dict[int, dict[int, mpq]] = {}
        for p in reversed(piv):
            row = dict(self.rows[p])
            for k in [k for k in row if k != p and k in red]:
                x = row.get(k)
                if not x:
                    continue
                for c, y in red[k].items():
                    nv = row.get(c, ZERO) - x * y
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            red[p] = row
        return [red[p] for p in piv]


def _rows_of(M) -> tuple[int, int, list[dict[int, mpq]]]:
    if isinstance(M, SparseMatrix):
        return M.nrows, M.ncols, [M.rows.get(r, {}) for r in range(M.nrows)]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    rows = []
    for row in M:
        if len(row) != ncols:
            raise DimensionError("ragged matrix")
        rows.append({c: as_q(v) for c, v in enumerate(row) if v})
    return nrows, ncols, rows


def rref(M) -> tuple[list[list[mpq]], int]:
    """Reduced row echelon form (same shape as ``M``, zero rows last) and rank."""
    nrows, ncols, rows = _rows_of(M)
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    red = ech.rref_rows()
    out = []
    for row in red:
        dense = [ZERO] * ncols
        for c, v in row.items():
            dense[c] = v
        out.append(dense)
    rank = len(out)
    out.extend([[ZERO] * ncols for _ in range(nrows - rank)])
    return out, rank


def pivots(R: Sequence[Sequence]) -> list[int]:
    out = []
    for row in R:
        for c, v in enumerate(row):
            if v:
                out.append(c)
                break
    return out


def _kernel_rows(ncols: int, red: list[dict[int, mpq]]) -> list[dict[int, mpq]]:
    piv = [min(r) for r in red]
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: ONE}
        for p, row in zip(piv, red):
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def kernel(M) -> "Subspace":
    """Null space {x : M x = 0} as a Subspace with RREF basis."""
    _, ncols, rows = _rows_of(M)
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return Subspace.from_sparse(ncols, _kernel_rows(ncols, ech.rref_rows()))


def kernel_from_equations(ncols: int, equations: Iterable[dict]) -> "Subspace":
    """Kernel of a system given as an iterable of sparse rows (dict col -> value)."""
    ech = Echelon(ncols)
    for eq in equations:
        if eq:
            ech.add(eq)
            if len(ech) == ncols:
                break
    return Subspace.from_sparse(ncols, _kernel_rows(ncols, ech.rref_rows()))


def solve(M, b: Sequence) -> list[mpq] | None:
    """One solution of M x = b, or None when the system is inconsistent."""
    nrows, ncols, rows = _rows_of(M)
    if len(b) != nrows:
        raise DimensionError(f"right-hand side of length {len(b)} for {nrows} rows")
    ech = Echelon(ncols + 1)
    for r, row in enumerate(rows):
        aug = dict(row)
        if b[r]:
            aug[ncols] = as_q(b[r])
        ech.add(aug)
    red = ech.rref_rows()
    x = [ZERO] * ncols
    for row in red:
        p = min(row)
        if p == ncols:
            return None
        x[p] = row.get(ncols, ZERO)
    return x


class Subspace:
    """Subspace of Q^n stored by its unique RREF basis."""

    __slots__ = ("n", "basis", "pivots", "_ech")

    def __init__(self, n: int, basis: tuple[tuple[mpq, ...], ...], pivs: tuple[int, ...]):
        self.n = n
        self.basis = basis
        self.pivots = pivs
        self._ech = None

    @classmethod
    def from_sparse(cls, n: int, rows: Iterable[dict[int, mpq]]) -> "Subspace":
        ech = Echelon(n)
        for r in rows:
            for c in r:
                if not 0 <= c < n:
                    raise DimensionError(f"index {c} outside ambient dimension {n}")
            ech.add(r)
        return cls._from_echelon(n, ech)

    @classmethod
    def _from_echelon(cls, n: int, ech: Echelon) -> "Subspace":
        red = ech.rref_rows()
        basis = []
        for row in red:
            dense = [ZERO] * n
            for c, v in row.items():
                dense[c] = v
            basis.append(tuple(dense))
        return cls(n, tuple(basis), tuple(min(r) for r in red))

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        ech = Echelon(n)
        for v in vectors:
            if len(v) != n:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
            ech.add({c: as_q(x) for c, x in enumerate(v) if x})
            if len(ech) == n:
                break
        return cls._from_echelon(n, ech)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.coordinate(n, range(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        idx = sorted(set(indices))
        basis = []
        for i in idx:
            v = [ZERO] * n
            v[i] = ONE
            basis.append(tuple(v))
        return cls(n, tuple(basis), tuple(idx))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def _echelon(self) -> Echelon:
        if self._ech is None:
            ech = Echelon(self.n)
            for p, row in zip(self.pivots, self.basis):
                ech.rows[p] = {c: v for c, v in enumerate(row) if v}
            self._ech = ech
        return self._ech

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.n:
            raise DimensionError("ambient dimensions differ")
        return self._echelon().contains({c: as_q(x) for c, x in enumerate(v) if x})

    def coords(self, v: Sequence) -> list[mpq]:
        """Coordinates of ``v`` in the RREF basis (read off at the pivots); checks membership."""
        c = [as_q(v[p]) for p in self.pivots]
        recon = [ZERO] * self.n
        for x, row in zip(c, self.basis):
            if x:
                for k, y in enumerate(row):
                    if y:
                        recon[k] += x * y
        if any(as_q(a) != b for a, b in zip(v, recon)):
            raise ValueError("vector is not in the subspace")
        return c

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.n, self.basis))

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.n})"


def _check(U: Subspace, V: Subspace):
    if U.n != V.n:
        raise DimensionError(f"ambient dimensions {U.n} and {V.n} differ")


def span(vectors: Iterable[Sequence], n: int | None = None) -> Subspace:
    vectors = list(vectors)
    if n is None:
        if not vectors:
            raise DimensionError("ambient dimension needed for an empty span")
        n = len(vectors[0])
    return Subspace.span(n, vectors)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check(U, V)
    return Subspace.span(U.n, list(U.basis) + list(V.basis))


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V via the kernel of [U^T | -V^T]."""
    _check(U, V)
    if not U.dim or not V.dim:
        return Subspace.zero(U.n)
    a, b = U.dim, V.dim
    eqs = []
    for k in range(U.n):
        row = {}
        for i, u in enumerate(U.basis):
            if u[k]:
                row[i] = u[k]
        for j, v in enumerate(V.basis):
            if v[k]:
                row[a + j] = -v[k]
        if row:
            eqs.append(row)
    K = kernel_from_equations(a + b, eqs)
    vecs = []
    for w in K.basis:
        vec = [ZERO] * U.n
        for i in range(a):
            if w[i]:
                for k, x in enumerate(U.basis[i]):
                    if x:
                        vec[k] += w[i] * x
        vecs.append(vec)
    return Subspace.span(U.n, vecs)


def contains(U: Subspace, v: Sequence) -> bool:
    return U.contains(v)


def equal(U: Subspace, V: Subspace) -> bool:
    _check(U, V)
    return U == V


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[mpq]]:
    """Dense product of small matrices."""
    if A and len(A[0]) != len(B):
        raise DimensionError("inner dimensions differ")
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * m
        for k, x in enumerate(row):
            if x:
                for c, y in enumerate(B[k]):
                    if y:
                        acc[c] += x * y
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> list[mpq]:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in A]


def rank(M) -> int:
    return rref(M)[1]
