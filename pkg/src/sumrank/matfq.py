"""Exact linear algebra over a FieldContext: matrices, subspaces, RREF.

The reduced row echelon form is the only canonical representation used
for subspaces anywhere in the package, so equality of spans is always a
tuple comparison.  Entries are integer element representations; every
operation goes through the context.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    ContextMismatch,
    DimensionMismatch,
    EnumerationTooLarge,
    ShapeMismatch,
)
from .gf import FieldContext

__all__ = [
    "MatrixFq",
    "Subspace",
    "rref",
    "nullspace_rows",
    "vec_add",
    "vec_scale",
    "gaussian_binomial",
    "count_subspaces",
    "enumerate_subspaces",
    "trace_product",
]

SUBSPACE_CAP = 10**6


def vec_add(ctx: FieldContext, u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
    add = ctx.add
    return tuple(add(a, b) for a, b in zip(u, v))


def vec_scale(ctx: FieldContext, c: int, v: Sequence[int]) -> Tuple[int, ...]:
    if c == 0:
        return (0,) * len(v)
    if c == 1:
        return tuple(v)
    mul = ctx.mul
    return tuple(mul(c, a) for a in v)


def rref(rows: Iterable[Sequence[int]], ncols: int, ctx: FieldContext):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    mat = [list(r) for r in rows]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        lead = mat[rank][col]
        if lead != 1:
            inv = ctx.inv(lead)
            mat[rank] = [ctx.mul(inv, x) for x in mat[rank]]
        prow = mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                row = mat[r]
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] = ctx.sub(row[c], ctx.mul(f, prow[c]))
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return [tuple(r) for r in mat[:rank]], pivots


def reduce_against(
    vec: Sequence[int], basis: Sequence[Sequence[int]], pivots: Sequence[int], ctx: FieldContext
):
    """Reduce vec against an RREF basis.  Returns (coefficients, remainder)."""
    rem = list(vec)
    coeffs = []
    for row, p in zip(basis, pivots):
        c = rem[p]
        coeffs.append(c)
        if c != 0:
            for i in range(p, len(rem)):
                if row[i]:
                    rem[i] = ctx.sub(rem[i], ctx.mul(c, row[i]))
    return coeffs, tuple(rem)


def nullspace_rows(rows: Iterable[Sequence[int]], ncols: int, ctx: FieldContext):
    """Canonical basis of {x : M x = 0} for the matrix M with the given rows."""
    red, pivots = rref(rows, ncols, ctx)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, p in enumerate(pivots):
            vec[p] = ctx.neg(red[i][f])
        basis.append(tuple(vec))
    return rref(basis, ncols, ctx)[0]


class MatrixFq:
    """An m x n matrix over a fixed field context, immutable."""

    __slots__ = ("ctx", "m", "n", "rows")

    def __init__(self, ctx: FieldContext, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) % ctx.q for x in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("ragged rows")
        self.ctx = ctx
        self.m = len(rows)
        self.n = n
        self.rows = rows

    @classmethod
    def zero(cls, ctx: FieldContext, m: int, n: int) -> "MatrixFq":
        return cls(ctx, [[0] * n for _ in range(m)])

    @classmethod
    def identity(cls, ctx: FieldContext, n: int) -> "MatrixFq":
        return cls(ctx, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, ctx: FieldContext, m: int, n: int, i: int, j: int) -> "MatrixFq":
        """The matrix with a single 1 in row i, column j (0-based)."""
        rows = [[0] * n for _ in range(m)]
        rows[i][j] = 1
        return cls(ctx, rows)

    def _check(self, other: "MatrixFq", same_shape: bool = True) -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch("matrices over different field contexts")
        if same_shape and (self.m != other.m or self.n != other.n):
            raise ShapeMismatch(f"{self.m}x{self.n} vs {other.m}x{other.n}")

    def __add__(self, other: "MatrixFq") -> "MatrixFq":
        self._check(other)
        return MatrixFq(
            self.ctx, [vec_add(self.ctx, a, b) for a, b in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "MatrixFq") -> "MatrixFq":
        self._check(other)
        sub = self.ctx.sub
        return MatrixFq(
            self.ctx,
            [tuple(sub(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)],
        )

    def __neg__(self) -> "MatrixFq":
        neg = self.ctx.neg
        return MatrixFq(self.ctx, [tuple(neg(x) for x in r) for r in self.rows])

    def scale(self, c: int) -> "MatrixFq":
        return MatrixFq(self.ctx, [vec_scale(self.ctx, c, r) for r in self.rows])

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        self._check(other, same_shape=False)
        if self.n != other.m:
            raise ShapeMismatch("inner dimensions differ")
        ctx = self.ctx
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            out_row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = ctx.add(acc, ctx.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return MatrixFq(ctx, out)

    def transpose(self) -> "MatrixFq":
        return MatrixFq(self.ctx, list(zip(*self.rows)))

    def rank(self) -> int:
        return len(rref(self.rows, self.n, self.ctx)[0])

    def rref(self):
        rows, pivots = rref(self.rows, self.n, self.ctx)
        return rows, pivots

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.rows)

    def is_invertible(self) -> bool:
        return self.m == self.n and self.rank() == self.n

    def inverse(self) -> "MatrixFq":
        if self.m != self.n:
            raise ShapeMismatch("only square matrices invert")
        n = self.n
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(aug, 2 * n, self.ctx)
        if pivots[:n] != list(range(n)):
            raise DimensionMismatch("matrix is singular")
        return MatrixFq(self.ctx, [r[n:] for r in red])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "MatrixFq":
        return MatrixFq(self.ctx, [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def flatten(self) -> Tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def row_space(self) -> "Subspace":
        return Subspace.from_vectors(self.ctx, self.n, self.rows)

    def column_space(self) -> "Subspace":
        return Subspace.from_vectors(self.ctx, self.m, list(zip(*self.rows)))

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixFq)
            and self.ctx == other.ctx
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.rows))

    def __repr__(self) -> str:
        return f"MatrixFq(q={self.ctx.q}, rows={self.to_lists()})"


def trace_product(a: MatrixFq, b: MatrixFq) -> int:
    """tr(a b^T), which is the entrywise dot product of a and b."""
    a._check(b)
    ctx = a.ctx
    acc = 0
    for r1, r2 in zip(a.rows, b.rows):
        for x, y in zip(r1, r2):
            if x and y:
                acc = ctx.add(acc, ctx.mul(x, y))
    return acc


class Subspace:
    """A subspace of F_q^n held as its canonical RREF basis."""

    __slots__ = ("ctx", "ambient", "basis", "pivots")

    def __init__(
        self,
        ctx: FieldContext,
        ambient: int,
        basis: Sequence[Sequence[int]] = (),
        pivots: Optional[Sequence[int]] = None,
        canonical: bool = False,
    ):
        self.ctx = ctx
        self.ambient = ambient
        if canonical and pivots is not None:
            self.basis = tuple(tuple(r) for r in basis)
            self.pivots = tuple(pivots)
        else:
            rows, piv = rref(basis, ambient, ctx)
            self.basis = tuple(rows)
            self.pivots = tuple(piv)

    @classmethod
    def from_vectors(cls, ctx: FieldContext, ambient: int, vectors) -> "Subspace":
        return cls(ctx, ambient, list(vectors))

    @classmethod
    def zero(cls, ctx: FieldContext, ambient: int) -> "Subspace":
        return cls(ctx, ambient, (), (), canonical=True)

    @classmethod
    def full(cls, ctx: FieldContext, ambient: int) -> "Subspace":
        eye = [[1 if i == j else 0 for j in range(ambient)] for i in range(ambient)]
        return cls(ctx, ambient, eye, tuple(range(ambient)), canonical=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch("subspaces over different field contexts")
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")

    def contains(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.ambient:
            raise DimensionMismatch("vector length differs from ambient dimension")
        _, rem = reduce_against(vec, self.basis, self.pivots, self.ctx)
        return all(x == 0 for x in rem)

    def coordinates(self, vec: Sequence[int]):
        coeffs, rem = reduce_against(vec, self.basis, self.pivots, self.ctx)
        if any(rem):
            return None
        return tuple(coeffs)

    def add(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ctx, self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce stacked [u|u] and [v|0] blocks, read the tail."""
        self._check(other)
        n = self.ambient
        stacked = [tuple(r) + tuple(r) for r in self.basis]
        stacked += [tuple(r) + (0,) * n for r in other.basis]
        red, _ = rref(stacked, 2 * n, self.ctx)
        inter = [r[n:] for r in red if all(x == 0 for x in r[:n])]
        return Subspace(self.ctx, n, inter)

    def orthogonal(self) -> "Subspace":
        """{y : x . y = 0 for all x here} under the standard dot product."""
        if self.dim == 0:
            return Subspace.full(self.ctx, self.ambient)
        rows = nullspace_rows(self.basis, self.ambient, self.ctx)
        return Subspace(self.ctx, self.ambient, rows)

    def vectors(self) -> Iterator[Tuple[int, ...]]:
        """All vectors, zero included, in deterministic counter order."""
        ctx, k, n = self.ctx, self.dim, self.ambient
        if k == 0:
            yield (0,) * n
            return
        scaled = [[vec_scale(ctx, c, row) for c in range(ctx.q)] for row in self.basis]
        digits = [0] * k
        partial = [(0,) * n] * (k + 1)
        while True:
            yield partial[k]
            pos = k - 1
            while pos >= 0 and digits[pos] == ctx.q - 1:
                digits[pos] = 0
                pos -= 1
            if pos < 0:
                return
            digits[pos] += 1
            for i in range(pos, k):
                partial[i + 1] = vec_add(ctx, partial[i], scaled[i][digits[i]])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ctx == other.ctx
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(n={self.ambient}, dim={self.dim})"


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, exact."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def count_subspaces(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(
    ctx: FieldContext, n: int, dim: int, cap: int = SUBSPACE_CAP
) -> Iterator[Subspace]:
    """All dim-dimensional subspaces of F_q^n in canonical RREF order.

    Pivot supports ascend lexicographically; within one support the free
    entries run through base-q counter order, row-major.  The count always
    equals the Gaussian binomial, which the cap is checked against before
    any work happens.
    """
    from itertools import combinations

    total = gaussian_binomial(n, dim, ctx.q)
    if total > cap:
        raise EnumerationTooLarge(f"{total} subspaces exceed cap {cap}")
    if dim == 0:
        yield Subspace.zero(ctx, n)
        return
    q = ctx.q
    for pivots in combinations(range(n), dim):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i in range(dim)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        for enc in range(q ** len(free)):
            rows = [[0] * n for _ in range(dim)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            rest = enc
            for i, j in reversed(free):
                rows[i][j] = rest % q
                rest //= q
            yield Subspace(ctx, n, [tuple(r) for r in rows], pivots, canonical=True)
