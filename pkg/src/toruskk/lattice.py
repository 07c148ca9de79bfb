"""Exact integer linear algebra: normal forms, kernels, saturation, minors.

Matrices are small (the design envelope is d <= 8), so everything here is
plain fraction-free elimination on Python ints. Columns of a basis matrix are
lattice vectors and their order is the orientation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError, PrimitivityError, RankError


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix. ``rows`` is kept explicitly so r x 0 is legal."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionError(f"ragged data for a {self.rows}x{self.cols} matrix")

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        cols = [tuple(int(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise DimensionError(f"every column must have {nrows} entries")
        data = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls(nrows, len(cols), data)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.data[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def select_columns(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def select_rows(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix(len(idx), self.cols, tuple(self.data[i] for i in idx))

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise DimensionError(f"cannot stack {self.shape} beside {other.shape}")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.data, other.data)))

    def negate_column(self, j: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols,
                         tuple(r[:j] + (-r[j],) + r[j + 1:] for r in self.data))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.data))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in ocols)
                               for r in self.data))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # text format: rows split by ';', entries by ','; "r x 0" for empty

    def to_text(self) -> str:
        if self.cols == 0 or self.rows == 0:
            return f"{self.rows} x {self.cols}"
        return ";".join(",".join(str(x) for x in r) for r in self.data)

    @classmethod
    def parse(cls, text: str) -> IntMatrix:
        """Parse ``"1,0;1,2"``, ``"3 x 0"`` or a JSON list of rows."""
        s = text.strip()
        try:
            if s.startswith("["):
                rows = json.loads(s)
                if not rows:
                    return cls(0, 0, ())
                return cls.from_rows(rows)
            if "x" in s:
                r, c = (p.strip() for p in s.split("x"))
                r, c = int(r), int(c)
                if r != 0 and c != 0:
                    raise ParseError(f"'r x c' form is only for empty matrices, got {text!r}")
                return cls.zeros(r, c)
            if not s:
                raise ParseError("empty matrix text")
            return cls.from_rows([[int(x) for x in row.split(",")] for row in s.split(";")])
        except (ValueError, TypeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"cannot parse matrix {text!r}: {exc}") from None

    def __str__(self) -> str:
        return self.to_text()


def as_matrix(a) -> IntMatrix:
    if isinstance(a, IntMatrix):
        return a
    if isinstance(a, str):
        return IntMatrix.parse(a)
    return IntMatrix.from_rows(a)


# ---------------------------------------------------------------------------
# elementary helpers on mutable row lists


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _freeze(rows: list[list[int]], ncols: int) -> IntMatrix:
    return IntMatrix(len(rows), ncols, tuple(tuple(r) for r in rows))


def _mutable(A: IntMatrix) -> list[list[int]]:
    return [list(r) for r in A.data]


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det(A: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant; det of the 0x0 matrix is 1."""
    A = as_matrix(A)
    n = A.rows
    if n != A.cols:
        raise DimensionError(f"determinant of non-square {A.shape} matrix")
    M = _mutable(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class HermiteDecomposition:
    H: IntMatrix
    U: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for c in self.H.columns() if any(c))


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariants(self) -> list[int]:
        """Nonzero diagonal entries d1 | d2 | ... of D."""
        out = []
        for i in range(min(self.D.rows, self.D.cols)):
            if self.D[i, i] == 0:
                break
            out.append(self.D[i, i])
        return out


def hermite_normal_form(A: IntMatrix) -> HermiteDecomposition:
    """Column-style HNF: ``A @ U == H`` with U unimodular.

    H is lower echelon by columns; each pivot is positive and the entries to
    its left in the pivot row lie in ``[0, pivot)``. Zero columns come last.
    """
    A = as_matrix(A)
    m, n = A.shape
    H = _mutable(A)
    U = _eye(n)

    def colop(c: int, j: int, s: int, t: int, u: int, v: int) -> None:
        # (col_c, col_j) <- (s*col_c + t*col_j, u*col_c + v*col_j)
        for M in (H, U):
            for r in M:
                a, b = r[c], r[j]
                r[c], r[j] = s * a + t * b, u * a + v * b

    c = 0
    for i in range(m):
        if c == n:
            break
        for j in range(c + 1, n):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][c]
            g, s, t = xgcd(a, b)
            colop(c, j, s, t, -b // g, a // g)
        p = H[i][c]
        if p == 0:
            continue
        if p < 0:
            for M in (H, U):
                for r in M:
                    r[c] = -r[c]
            p = -p
        for j in range(c):
            q = H[i][j] // p
            if q:
                for M in (H, U):
                    for r in M:
                        r[j] -= q * r[c]
        c += 1
    return HermiteDecomposition(_freeze(H, n), _freeze(U, n))


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """``U @ A @ V == D`` with D diagonal, d1 | d2 | ... >= 1, then zeros."""
    A = as_matrix(A)
    m, n = A.shape
    D = _mutable(A)
    U = _eye(m)
    V = _eye(n)

    def swap_rows(i: int, k: int) -> None:
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j: int, k: int) -> None:
        for M in (D, V):
            for r in M:
                r[j], r[k] = r[k], r[j]

    def add_row(dst: int, src: int, q: int) -> None:
        for M in (D, U):
            M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    def move_min_to(t: int, cells) -> bool:
        best = None
        for i, j in cells:
            if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                best = (i, j)
        if best is None:
            return False
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        return True

    for t in range(min(m, n)):
        if not move_min_to(t, ((i, j) for i in range(t, m) for j in range(t, n))):
            break
        while True:
            clean = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
                move_min_to(t, cells)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(_freeze(U, m), _freeze(D, n), _freeze(V, n))


def rank(A: IntMatrix) -> int:
    return hermite_normal_form(A).rank


# ---------------------------------------------------------------------------
# lattice operations


def is_primitive_basis(B: IntMatrix) -> bool:
    """True iff the columns of B are a basis of a direct summand of Z^d."""
    B = as_matrix(B)
    d, k = B.shape
    if k > d:
        raise DimensionError(f"{k} basis vectors cannot be independent in Z^{d}")
    if k == 0:
        return True
    inv = smith_normal_form(B).invariants
    return len(inv) == k and all(x == 1 for x in inv)


def integer_kernel_basis(A: IntMatrix) -> IntMatrix:
    """Canonical primitive basis of ``{v in Z^n : A v = 0}`` (HNF-reduced columns)."""
    A = as_matrix(A)
    n = A.cols
    h = hermite_normal_form(A)
    r = h.rank
    K = h.U.select_columns(range(r, n))
    if K.cols == 0:
        return K
    return hermite_normal_form(K).H.select_columns(range(K.cols))


def dual_section(B: IntMatrix) -> IntMatrix:
    """Integer M (d x k) with ``B.T @ M == I_k``; exists iff B is primitive."""
    B = as_matrix(B)
    d, k = B.shape
    if k > d:
        raise DimensionError(f"{k} basis vectors cannot be independent in Z^{d}")
    if k == 0:
        return IntMatrix.zeros(d, 0)
    s = smith_normal_form(B.T)
    inv = s.invariants
    if len(inv) < k:
        raise RankError(f"basis has rank {len(inv)} < {k}")
    if inv[-1] != 1:
        raise PrimitivityError(
            f"basis is not primitive (Smith invariant {inv[-1]})", invariant=inv[-1])
    return s.V.select_columns(range(k)) @ s.U


def saturate(B: IntMatrix) -> IntMatrix:
    """Primitive basis of ``span_R(B) ∩ Z^d``, oriented like B."""
    B = as_matrix(B)
    d, k = B.shape
    if k > d or rank(B) != k:
        raise RankError(f"saturate needs a full-rank basis, got rank {rank(B)} with {k} columns")
    if k == 0:
        return B
    S = integer_kernel_basis(integer_kernel_basis(B.T).T)
    W = dual_section(S).T @ B
    if det(W) < 0:
        S = S.negate_column(0)
    return S


@dataclass(frozen=True)
class PlueckerVector:
    d: int
    k: int
    coefficients: dict[tuple[int, ...], int]

    def nonzero(self) -> dict[tuple[int, ...], int]:
        return {J: c for J, c in self.coefficients.items() if c}


def pluecker_minors(B: IntMatrix) -> PlueckerVector:
    """Maximal minors of B indexed by ascending 1-based row subsets."""
    B = as_matrix(B)
    d, k = B.shape
    coeffs = {}
    for J in combinations(range(d), k):
        coeffs[tuple(j + 1 for j in J)] = det(B.select_rows(J))
    return PlueckerVector(d, k, coeffs)
