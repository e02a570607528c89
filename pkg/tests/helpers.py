"""Shared builders and independent brute-force oracles for the suite.

Everything random goes through an explicit Random instance so every test
is reproducible from its literal seed.  The oracles here deliberately
avoid the library's theorem-backed code paths: they enumerate.
"""

import random
from itertools import combinations, product as iter_product
from typing import Dict, List, Optional, Sequence, Tuple

from sumrank import FieldContext, LinearCode, MatrixFq, Shape

F2 = FieldContext(2, 1)
F3 = FieldContext(3, 1)
F4 = FieldContext(2, 2)


def random_shape(
    rng: random.Random,
    max_ell: int = 3,
    max_m: int = 3,
    cols_below_rows: bool = False,
) -> Shape:
    """A random strict shape; cols_below_rows forces n_i < m_i per block."""
    ell = rng.randint(1, max_ell)
    low = 2 if cols_below_rows else 1
    m = sorted((rng.randint(low, max_m) for _ in range(ell)), reverse=True)
    if cols_below_rows:
        n = [rng.randint(1, mi - 1) for mi in m]
    else:
        n = [rng.randint(1, mi) for mi in m]
    return Shape(tuple(m), tuple(n))


def random_code(
    rng: random.Random, ctx: FieldContext, shape: Shape, target_dim: int
) -> LinearCode:
    """Span of target_dim random vectors; the dim may land below the target."""
    rows = [
        tuple(rng.randrange(ctx.q) for _ in range(shape.ambient_dim))
        for _ in range(target_dim)
    ]
    return LinearCode(shape, ctx, rows)


def random_matrix(rng: random.Random, ctx: FieldContext, m: int, n: int) -> MatrixFq:
    return MatrixFq(ctx, [[rng.randrange(ctx.q) for _ in range(n)] for _ in range(m)])


def random_nonzero_matrix(rng, ctx, m, n) -> MatrixFq:
    while True:
        mat = random_matrix(rng, ctx, m, n)
        if not mat.is_zero():
            return mat


# ------------------------------------------------------------- brute oracles


def brute_rank(ctx: FieldContext, rows: Sequence[Sequence[int]]) -> int:
    """Rank by Gaussian elimination written out longhand, no library calls."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    col = 0
    while rank < len(work) and col < ncols:
        piv = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = ctx.inv(work[rank][col])
        work[rank] = [ctx.mul(inv, x) for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                c = work[i][col]
                work[i] = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(work[i], work[rank])]
        rank += 1
        col += 1
    return rank


def span_vectors(
    ctx: FieldContext, basis: Sequence[Sequence[int]], width: Optional[int] = None
) -> frozenset:
    """Every vector in the span, as a frozenset of tuples."""
    if width is None:
        width = len(basis[0]) if basis else 0
    out = {(0,) * width}
    for vec in basis:
        nxt = set()
        for c in range(ctx.q):
            scaled = tuple(ctx.mul(c, x) for x in vec)
            for w in out:
                nxt.add(tuple(ctx.add(a, b) for a, b in zip(w, scaled)))
        out = nxt
    return frozenset(out)


def brute_min_cover(points: Sequence[Tuple[int, int]]) -> int:
    """Smallest set of rows and columns covering every point."""
    pts = sorted(set(points))
    lines = [("r", r) for r in {p[0] for p in pts}]
    lines += [("c", c) for c in {p[1] for p in pts}]
    for size in range(len(lines) + 1):
        for chosen in combinations(lines, size):
            taken = set(chosen)
            if all(("r", r) in taken or ("c", c) in taken for r, c in pts):
                return size
    raise AssertionError("unreachable")


def brute_best_01_rank(a: MatrixFq, mats: Sequence[MatrixFq]) -> int:
    """Max rank of a + sum of a 0/1 subset, fully enumerated."""
    best = 0
    for xs in iter_product((0, 1), repeat=len(mats)):
        total = a
        for x, mat in zip(xs, mats):
            if x:
                total = total + mat
        best = max(best, total.rank())
    return best


def hamming_generalized_weights(code: LinearCode) -> Tuple[int, ...]:
    """Classical GHW hierarchy by enumerating r-generated subcodes.

    Valid on shapes with every block 1x1, where srk is Hamming weight.
    d_r = min support size over r-dimensional subcodes.
    """
    ctx = code.ctx
    words = list(code.iter_flat(include_zero=False))
    out = []
    for r in range(1, code.dim + 1):
        best = None
        for gens in combinations(words, r):
            if brute_rank(ctx, gens) != r:
                continue
            supp = set()
            for w in span_vectors(ctx, gens):
                supp.update(i for i, x in enumerate(w) if x)
            size = len(supp)
            if best is None or size < best:
                best = size
        assert best is not None
        out.append(best)
    return tuple(out)


def exhaustive_gen_weight(code: LinearCode, r: int) -> int:
    """d_r straight from the definition: every product anticode, materialized.

    Enumerates per-block support choices (column supports, plus row
    supports on square blocks) without going through the library's
    composition machinery.
    """
    from sumrank import Subspace, enumerate_subspaces

    shape, ctx = code.shape, code.ctx
    per_block: List[List[Tuple[int, List[Tuple[int, ...]]]]] = []
    for i in range(shape.ell):
        mm, nn = shape.m[i], shape.n[i]
        options = []
        for u in range(nn + 1):
            for sp in enumerate_subspaces(ctx, nn, u):
                rows = _col_support_rows(shape, i, sp.basis, mm, nn)
                options.append((u, rows))
            if 0 < u < nn and mm == nn:
                for sp in enumerate_subspaces(ctx, mm, u):
                    rows = _row_support_rows(shape, i, sp.basis, mm, nn)
                    options.append((u, rows))
        per_block.append(options)
    best = None
    for combo in iter_product(*per_block):
        weight = sum(u for u, _ in combo)
        if best is not None and weight >= best:
            continue
        rows = [row for _, block_rows in combo for row in block_rows]
        anticode = LinearCode(shape, ctx, rows) if rows else LinearCode.zero(shape, ctx)
        if code.intersect(anticode).dim >= r:
            best = weight
    assert best is not None, "the full space is always feasible"
    return best


def _col_support_rows(shape, i, basis, mm, nn):
    off = shape.block_offsets()[i]
    out = []
    for vec in basis:
        for r in range(mm):
            flat = [0] * shape.ambient_dim
            flat[off + r * nn : off + (r + 1) * nn] = list(vec)
            out.append(tuple(flat))
    return out


def _row_support_rows(shape, i, basis, mm, nn):
    off = shape.block_offsets()[i]
    out = []
    for vec in basis:
        for c in range(nn):
            flat = [0] * shape.ambient_dim
            for r in range(mm):
                flat[off + r * nn + c] = vec[r]
            out.append(tuple(flat))
    return out
