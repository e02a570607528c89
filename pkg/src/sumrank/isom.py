"""Sum-rank isometries: block permutations, two-sided GL actions, transposes.

A linear map preserving the sum-rank weight on a strict product space
factors as a dimension-preserving permutation of the blocks followed by
X -> M X N per block, with X -> M X^T N allowed on square blocks.  The
module applies, samples, composes, and exhaustively searches them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product as iter_product
from typing import Iterator, List, Optional, Tuple

from .code import LinearCode, MatrixTuple, Shape
from .errors import (
    ContextMismatch,
    GroupTooLarge,
    IllegalTranspose,
    ShapeMismatch,
)
from .gf import FieldContext
from .matfq import MatrixFq

__all__ = [
    "Isometry",
    "gl_order",
    "gl_group",
    "random_gl",
    "random_isometry",
    "admissible_permutations",
    "isometry_count",
    "equivalent_codes",
    "GROUP_CAP",
]

GROUP_CAP = 10**7
_GL_ENUM_CAP = 1 << 22

_GL_CACHE: dict = {}


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def gl_group(ctx: FieldContext, n: int) -> Tuple[MatrixFq, ...]:
    """All invertible n x n matrices, cached, in row-major counter order."""
    key = (ctx, n)
    cached = _GL_CACHE.get(key)
    if cached is not None:
        return cached
    q = ctx.q
    if q ** (n * n) > _GL_ENUM_CAP:
        raise GroupTooLarge(f"cannot enumerate GL({n}, F_{q})")
    out = []
    for enc in range(q ** (n * n)):
        rest = enc
        entries = []
        for _ in range(n * n):
            entries.append(rest % q)
            rest //= q
        entries.reverse()
        mat = MatrixFq(ctx, [entries[i * n : (i + 1) * n] for i in range(n)])
        if mat.is_invertible():
            out.append(mat)
    result = tuple(out)
    _GL_CACHE[key] = result
    return result


def random_gl(ctx: FieldContext, n: int, rng: random.Random) -> MatrixFq:
    """Uniform invertible matrix by rejection; acceptance is prod(1 - q^-i)."""
    q = ctx.q
    while True:
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        mat = MatrixFq(ctx, rows)
        if mat.is_invertible():
            return mat


@dataclass(frozen=True)
class Isometry:
    """Weight-preserving map: block j of the image is M_j op(X_sigma[j]) N_j.

    sigma must preserve block dimensions and transpose flags are legal on
    square blocks only; every M_j and N_j must be invertible.
    """

    shape: Shape
    ctx: FieldContext
    sigma: Tuple[int, ...]
    transpose: Tuple[bool, ...]
    left: Tuple[MatrixFq, ...]
    right: Tuple[MatrixFq, ...]

    def __post_init__(self):
        ell = self.shape.ell
        if sorted(self.sigma) != list(range(ell)):
            raise ShapeMismatch("sigma is not a permutation of the blocks")
        if len(self.transpose) != ell or len(self.left) != ell or len(self.right) != ell:
            raise ShapeMismatch("per-block data must cover every block")
        for j in range(ell):
            mm, nn = self.shape.m[j], self.shape.n[j]
            if self.shape.m[self.sigma[j]] != mm or self.shape.n[self.sigma[j]] != nn:
                raise ShapeMismatch("sigma must preserve block dimensions")
            if self.transpose[j] and mm != nn:
                raise IllegalTranspose("transpose is legal on square blocks only")
            lm, rn = self.left[j], self.right[j]
            if lm.ctx != self.ctx or rn.ctx != self.ctx:
                raise ContextMismatch("isometry matrices over a different field context")
            if lm.m != mm or lm.n != mm or rn.m != nn or rn.n != nn:
                raise ShapeMismatch(f"block {j}: factor dimensions do not match")
            if not lm.is_invertible() or not rn.is_invertible():
                raise ValueError(f"block {j}: factors must be invertible")

    @classmethod
    def identity(cls, shape: Shape, ctx: FieldContext) -> "Isometry":
        ell = shape.ell
        return cls(
            shape,
            ctx,
            tuple(range(ell)),
            (False,) * ell,
            tuple(MatrixFq.identity(ctx, m) for m in shape.m),
            tuple(MatrixFq.identity(ctx, n) for n in shape.n),
        )

    def apply(self, t: MatrixTuple) -> MatrixTuple:
        if t.shape != self.shape or t.ctx != self.ctx:
            raise ShapeMismatch("tuple does not live in this isometry's space")
        blocks = []
        for j in range(self.shape.ell):
            x = t.blocks[self.sigma[j]]
            if self.transpose[j]:
                x = x.transpose()
            blocks.append(self.left[j] @ x @ self.right[j])
        return MatrixTuple(self.shape, blocks)

    def apply_code(self, code: LinearCode) -> LinearCode:
        if code.shape != self.shape or code.ctx != self.ctx:
            raise ShapeMismatch("code does not live in this isometry's space")
        return LinearCode.from_tuples(
            self.shape, self.ctx, [self.apply(b) for b in code.basis_tuples()]
        )

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        if self.shape != other.shape or self.ctx != other.ctx:
            raise ShapeMismatch("isometries on different spaces")
        ell = self.shape.ell
        sigma = tuple(other.sigma[self.sigma[j]] for j in range(ell))
        transpose = []
        left = []
        right = []
        for j in range(ell):
            i = self.sigma[j]
            tr_inner = other.transpose[i]
            tr_outer = self.transpose[j]
            if tr_outer:
                # (M' X N')^T = N'^T X^T M'^T
                left.append(self.left[j] @ other.right[i].transpose())
                right.append(other.left[i].transpose() @ self.right[j])
            else:
                left.append(self.left[j] @ other.left[i])
                right.append(other.right[i] @ self.right[j])
            transpose.append(tr_inner != tr_outer)
        return Isometry(
            self.shape, self.ctx, sigma, tuple(transpose), tuple(left), tuple(right)
        )

    def inverse(self) -> "Isometry":
        ell = self.shape.ell
        inv_sigma = [0] * ell
        for j in range(ell):
            inv_sigma[self.sigma[j]] = j
        transpose = [False] * ell
        left: List[Optional[MatrixFq]] = [None] * ell
        right: List[Optional[MatrixFq]] = [None] * ell
        for j in range(ell):
            i = self.sigma[j]
            li = self.left[j].inverse()
            ri = self.right[j].inverse()
            if self.transpose[j]:
                transpose[i] = True
                left[i] = ri.transpose()
                right[i] = li.transpose()
            else:
                left[i] = li
                right[i] = ri
        return Isometry(
            self.shape,
            self.ctx,
            tuple(inv_sigma),
            tuple(transpose),
            tuple(left),  # type: ignore[arg-type]
            tuple(right),  # type: ignore[arg-type]
        )

    def to_dict(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "blocks": [
                {
                    "M": self.left[j].to_lists(),
                    "N": self.right[j].to_lists(),
                    "transpose": bool(self.transpose[j]),
                }
                for j in range(self.shape.ell)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, shape: Shape, ctx: FieldContext) -> "Isometry":
        blocks = data["blocks"]
        return cls(
            shape,
            ctx,
            tuple(data["sigma"]),
            tuple(bool(b["transpose"]) for b in blocks),
            tuple(MatrixFq(ctx, b["M"]) for b in blocks),
            tuple(MatrixFq(ctx, b["N"]) for b in blocks),
        )


def random_isometry(
    ctx: FieldContext,
    shape: Shape,
    rng: random.Random,
    allow_permutation: bool = True,
    allow_transpose: bool = True,
) -> Isometry:
    ell = shape.ell
    sigma = list(range(ell))
    if allow_permutation:
        by_dims: dict = {}
        for i in range(ell):
            by_dims.setdefault((shape.m[i], shape.n[i]), []).append(i)
        for idxs in by_dims.values():
            shuffled = idxs[:]
            rng.shuffle(shuffled)
            for pos, val in zip(idxs, shuffled):
                sigma[pos] = val
    transpose = tuple(
        allow_transpose and shape.m[j] == shape.n[j] and rng.random() < 0.5
        for j in range(ell)
    )
    left = tuple(random_gl(ctx, m, rng) for m in shape.m)
    right = tuple(random_gl(ctx, n, rng) for n in shape.n)
    return Isometry(shape, ctx, tuple(sigma), transpose, left, right)


def admissible_permutations(shape: Shape) -> Iterator[Tuple[int, ...]]:
    """Block permutations preserving (m_i, n_i), lexicographic order."""
    dims = list(zip(shape.m, shape.n))
    for sigma in permutations(range(shape.ell)):
        if all(dims[sigma[j]] == dims[j] for j in range(shape.ell)):
            yield sigma


def isometry_count(shape: Shape, q: int) -> int:
    """Size of the search space walked by equivalent_codes."""
    per_block = 1
    for mm, nn in zip(shape.m, shape.n):
        factor = gl_order(mm, q) * gl_order(nn, q)
        if mm == nn:
            factor *= 2
        per_block *= factor
    nperm = sum(1 for _ in admissible_permutations(shape))
    return nperm * per_block


def _transpose_masks(shape: Shape) -> Iterator[Tuple[bool, ...]]:
    squares = [j for j in range(shape.ell) if shape.m[j] == shape.n[j]]
    for bits in range(1 << len(squares)):
        mask = [False] * shape.ell
        for pos, j in enumerate(squares):
            mask[j] = bool(bits >> pos & 1)
        yield tuple(mask)


def equivalent_codes(
    first: LinearCode,
    second: LinearCode,
    cap: int = GROUP_CAP,
    all_witnesses: bool = False,
):
    """Search the full isometry group for a map sending first onto second.

    Returns a witness Isometry or None; with all_witnesses, the complete
    list (for first == second, the automorphism group).  The group size
    is checked against cap before any work happens.
    """
    if first.shape != second.shape:
        raise ShapeMismatch("codes live in different product spaces")
    if first.ctx != second.ctx:
        raise ContextMismatch("codes over different field contexts")
    shape, ctx = first.shape, first.ctx
    found: List[Isometry] = []
    if first.dim != second.dim:
        return found if all_witnesses else None
    total = isometry_count(shape, ctx.q)
    if total > cap:
        raise GroupTooLarge(f"{total} isometries exceed cap {cap}")
    # weight data is isometry-invariant; cheap rejection when feasible
    if not all_witnesses and 0 < first.dim and ctx.q**first.dim <= 1 << 14:
        if first.srk_distribution() != second.srk_distribution():
            return None
    proj_dims_second = [second.block_projection(j).dim for j in range(shape.ell)]
    proj_dims_first = [first.block_projection(j).dim for j in range(shape.ell)]
    basis = first.basis_tuples()
    target = second.rows
    left_pools = [gl_group(ctx, m) for m in shape.m]
    right_pools = [gl_group(ctx, n) for n in shape.n]
    for sigma in admissible_permutations(shape):
        if any(
            proj_dims_first[sigma[j]] != proj_dims_second[j] for j in range(shape.ell)
        ):
            continue
        ell = shape.ell
        permuted = [
            [b.blocks[sigma[j]] for j in range(ell)] for b in basis
        ]
        for mask in _transpose_masks(shape):
            blocks_in = [
                [x.transpose() if mask[j] else x for j, x in enumerate(row)]
                for row in permuted
            ]
            for left in iter_product(*(left_pools[j] for j in range(ell))):
                half = [
                    [left[j] @ x for j, x in enumerate(row)] for row in blocks_in
                ]
                for right in iter_product(*(right_pools[j] for j in range(ell))):
                    image = LinearCode.from_tuples(
                        shape,
                        ctx,
                        [
                            MatrixTuple(shape, [x @ right[j] for j, x in enumerate(row)])
                            for row in half
                        ],
                    )
                    if image.rows == target:
                        phi = Isometry(shape, ctx, sigma, mask, left, right)
                        if not all_witnesses:
                            return phi
                        found.append(phi)
    return found if all_witnesses else None
