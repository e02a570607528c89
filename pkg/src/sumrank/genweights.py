"""Generalized sum-rank weights and expansion of extension-field codes.

d_r is the least maximum weight of an anticode from the chosen family
meeting the code in dimension at least r.  Three families are supported:
the per-block products, the products enlarged by binary trailing tails,
and the plain support spaces (which also make sense on non-strict
shapes and drive the leakage analysis).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

from .anticode import AnticodeDescriptor, enumerate_anticodes, product_descriptors
from .code import LinearCode, MatrixTuple, Shape
from .errors import (
    GammaNotBasis,
    InvariantViolation,
    NotLinearOverSubfield,
    RankOutOfRange,
    ShapeMismatch,
    UnequalRowDims,
)
from .gf import FieldContext, _digits, _undigits
from .matfq import MatrixFq

__all__ = [
    "WeightProfile",
    "gen_weight",
    "weight_profile",
    "wei_duality_check",
    "extension_context",
    "subfield_embedding",
    "GammaBasis",
    "gamma_expand",
    "VARIANTS",
]

VARIANTS = ("product", "all", "support")


def _family(
    ctx: FieldContext, shape: Shape, mu: int, variant: str, cap: int
) -> Iterator[AnticodeDescriptor]:
    if variant == "product":
        return product_descriptors(ctx, shape, mu, allow_row=True, cap=cap)
    if variant == "all":
        return enumerate_anticodes(ctx, shape, mu, variant="all", cap=cap)
    if variant == "support":
        return product_descriptors(ctx, shape, mu, allow_row=False, cap=cap)
    raise ValueError(f"unknown variant {variant!r}")


def _check_variant_shape(shape: Shape, variant: str) -> None:
    if variant in ("product", "all") and not shape.strict:
        raise ShapeMismatch(f"variant {variant!r} needs a strict shape")


def gen_weight(
    code: LinearCode, r: int, variant: str = "product", cap: int = 10**6
) -> int:
    """r-th generalized weight: ascending mu, first family member whose
    intersection with the code has dimension at least r wins."""
    _check_variant_shape(code.shape, variant)
    if not 1 <= r <= code.dim:
        raise RankOutOfRange(f"r={r} outside 1..{code.dim}")
    for mu in range(1, code.shape.ncols + 1):
        for desc in _family(code.ctx, code.shape, mu, variant, cap):
            if code.intersect(desc.materialize()).dim >= r:
                return mu
    raise InvariantViolation("the full space must meet every rank demand")


@dataclass(frozen=True)
class WeightProfile:
    """All d_r of one code under one anticode family, 1-indexed."""

    variant: str
    dim: int
    ncols: int
    weights: Tuple[int, ...]

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if len(self.weights) != self.dim:
            raise ShapeMismatch("one weight per dimension")
        if any(b < a for a, b in zip(self.weights, self.weights[1:])):
            raise InvariantViolation("weights must be nondecreasing")
        if self.weights and self.weights[-1] > self.ncols:
            raise InvariantViolation("weights are bounded by the column count")

    def weight(self, r: int) -> int:
        if not 1 <= r <= self.dim:
            raise RankOutOfRange(f"r={r} outside 1..{self.dim}")
        return self.weights[r - 1]

    def to_dict(self) -> dict:
        return {"variant": self.variant, "dim": self.dim, "weights": list(self.weights)}


def weight_profile(
    code: LinearCode, variant: str = "product", cap: int = 10**6
) -> WeightProfile:
    """All generalized weights in one shared sweep over the family."""
    _check_variant_shape(code.shape, variant)
    kdim = code.dim
    found: List[Optional[int]] = [None] * (kdim + 1)
    unset = kdim
    if unset:
        for mu in range(1, code.shape.ncols + 1):
            for desc in _family(code.ctx, code.shape, mu, variant, cap):
                t = code.intersect(desc.materialize()).dim
                for r in range(1, t + 1):
                    if found[r] is None:
                        found[r] = mu
                        unset -= 1
                if unset == 0:
                    break
            if unset == 0:
                break
        if unset:
            raise InvariantViolation("the full space must meet every rank demand")
    return WeightProfile(
        variant, kdim, code.shape.ncols, tuple(found[1:])  # type: ignore[arg-type]
    )


def _residue_set(weights: Sequence[int], start: int, step: int) -> frozenset:
    """{weights[i-1] : i = start + s*step inside 1..len(weights)}."""
    total = len(weights)
    r = start % step
    if r == 0:
        r = step
    return frozenset(weights[i - 1] for i in range(r, total + 1, step))


def wei_duality_check(code: LinearCode, cap: int = 10**6) -> dict:
    """Duality of weight sets for equal row dimensions.

    For each residue r in [m], the dual's weight set on the residue class
    of r must be the complement in [n] of the reflected weight set of the
    code on the class of r + dim(code).  Raises InvariantViolation on any
    failure; returns the sets for inspection.
    """
    shape = code.shape
    m = shape.m[0]
    if any(mi != m for mi in shape.m):
        raise UnequalRowDims("weight duality needs equal row dimensions")
    n = shape.ncols
    dual = code.dual()
    primal_w = weight_profile(code, "product", cap).weights
    dual_w = weight_profile(dual, "product", cap).weights
    rows = []
    for r in range(1, m + 1):
        w_dual = _residue_set(dual_w, r, m)
        reflected = frozenset(n + 1 - d for d in _residue_set(primal_w, r + code.dim, m))
        complement = frozenset(range(1, n + 1)) - reflected
        if w_dual != complement:
            raise InvariantViolation(
                f"duality fails at residue {r}: {sorted(w_dual)} != {sorted(complement)}"
            )
        rows.append(
            {
                "r": r,
                "dual_set": sorted(w_dual),
                "complement_set": sorted(complement),
            }
        )
    return {
        "m": m,
        "ncols": n,
        "primal": list(primal_w),
        "dual": list(dual_w),
        "classes": rows,
    }


# ---------------------------------------------------------------------------
# extension fields and expansion to matrix codes


@lru_cache(maxsize=None)
def extension_context(base: FieldContext, m: int) -> FieldContext:
    if m < 1:
        raise ValueError("extension degree must be positive")
    if m == 1:
        return base
    return FieldContext(base.p, base.e * m)


@lru_cache(maxsize=None)
def subfield_embedding(small: FieldContext, big: FieldContext) -> Tuple[int, ...]:
    """Embedding table: image in big of every element of small.

    The map sends the small generator polynomial variable to the least
    root of the small modulus in big, which pins one embedding among the
    conjugates.
    """
    if small.p != big.p or big.e % small.e:
        raise NotLinearOverSubfield("no subfield copy inside the big field")
    p, e = small.p, small.e
    if e == 1:
        return tuple(range(p))
    if small == big:
        return tuple(range(small.q))
    root = None
    coeffs = list(reversed(small.modulus))
    for z in range(big.q):
        acc = 0
        for c in coeffs:
            acc = big.add(big.mul(acc, z), c)
        if acc == 0:
            root = z
            break
    assert root is not None, "the modulus splits in every overfield"
    table = []
    for x in range(small.q):
        digs = _digits(x, p, e)
        acc = 0
        power = 1
        for c in digs:
            if c:
                acc = big.add(acc, big.mul(c, power))
            power = big.mul(power, root)
        table.append(acc)
    return tuple(table)


def _monomial_reprs(degree: int, p: int) -> Tuple[int, ...]:
    return tuple(p**j for j in range(degree))


@lru_cache(maxsize=None)
def _prime_context(p: int) -> FieldContext:
    return FieldContext(p, 1)


class GammaBasis:
    """Per-block bases of the extension fields over the base field.

    Block i carries a basis of F_{q^{m_i}} over F_q, as elements of the
    extension context; coordinates of any extension scalar in that basis
    come from one prime-field linear solve, precomputed per block.
    """

    __slots__ = ("base", "shape", "exts", "bases", "_solvers")

    def __init__(
        self, base: FieldContext, shape: Shape, bases: Sequence[Sequence[int]]
    ):
        self.base = base
        self.shape = shape
        if len(bases) != shape.ell:
            raise ShapeMismatch("one basis per block")
        self.exts = tuple(extension_context(base, m) for m in shape.m)
        clean = []
        for i, gams in enumerate(bases):
            if len(gams) != shape.m[i]:
                raise GammaNotBasis(f"block {i}: need {shape.m[i]} basis elements")
            if any(not 0 <= g < self.exts[i].q for g in gams):
                raise GammaNotBasis(f"block {i}: element outside the extension field")
            clean.append(tuple(gams))
        self.bases = tuple(clean)
        self._solvers = tuple(self._build_solver(i) for i in range(shape.ell))

    @classmethod
    def monomial(cls, base: FieldContext, shape: Shape) -> "GammaBasis":
        """Powers 1, x, ..., x^(m_i - 1) of the extension variable."""
        return cls(base, shape, [_monomial_reprs(m, base.p) for m in shape.m])

    def _build_solver(self, i: int) -> MatrixFq:
        base, big = self.base, self.exts[i]
        p, e, m = base.p, base.e, self.shape.m[i]
        em = e * m
        prime = _prime_context(p)
        embed = subfield_embedding(base, big)
        cols = []
        for gam in self.bases[i]:
            for j in range(e):
                beta = embed[_undigits([0] * j + [1], p)] if j else 1
                cols.append(_digits(big.mul(beta, gam), p, em))
        mat = MatrixFq(prime, [[cols[c][r] for c in range(em)] for r in range(em)])
        if not mat.is_invertible():
            raise GammaNotBasis(f"block {i}: elements are dependent over the base field")
        return mat.inverse()

    def coordinates(self, i: int, w: int) -> Tuple[int, ...]:
        """Base-field coordinates of extension scalar w in basis i."""
        base, big = self.base, self.exts[i]
        p, e, m = base.p, base.e, self.shape.m[i]
        solver = self._solvers[i]
        rhs = _digits(w, p, e * m)
        prime = solver.ctx
        t = [
            sum(prime.mul(solver.rows[r][c], rhs[c]) for c in range(e * m)) % p
            for r in range(e * m)
        ]
        return tuple(_undigits(t[k * e : (k + 1) * e], p) for k in range(m))

    def expand_vector(self, v: Sequence[Sequence[int]]) -> MatrixTuple:
        """The matrix tuple whose block i solves (gamma_i) X = v_i."""
        if len(v) != self.shape.ell:
            raise ShapeMismatch("one segment per block")
        blocks = []
        for i, seg in enumerate(v):
            mm, nn = self.shape.m[i], self.shape.n[i]
            if len(seg) != nn:
                raise ShapeMismatch(f"block {i}: expected {nn} coordinates")
            cols = [self.coordinates(i, w) for w in seg]
            blocks.append(
                MatrixFq(self.base, [[cols[c][r] for c in range(nn)] for r in range(mm)])
            )
        return MatrixTuple(self.shape, blocks)


def gamma_expand(
    gamma: GammaBasis,
    vectors: Sequence[Sequence[Sequence[int]]],
    subfield_degree: Optional[int] = None,
) -> LinearCode:
    """Base-field matrix code spanned by a subfield-linear vector code.

    vectors generate the code over F_{q^k}, k = subfield_degree (default
    gcd of the m_i); the result is their closure under the subfield
    scalars, expanded blockwise through gamma.
    """
    shape, base = gamma.shape, gamma.base
    k = gcd(*shape.m) if len(shape.m) > 1 else shape.m[0]
    if subfield_degree is not None:
        if subfield_degree < 1 or k % subfield_degree:
            raise NotLinearOverSubfield(
                f"degree {subfield_degree} does not divide every block degree"
            )
        k = subfield_degree
    sub = extension_context(base, k)
    embeds = [subfield_embedding(sub, ext) for ext in gamma.exts]
    scalars = _monomial_reprs(k, base.p)
    spanning = []
    for v in vectors:
        for s in scalars:
            scaled = tuple(
                tuple(gamma.exts[i].mul(embeds[i][s], w) for w in seg)
                for i, seg in enumerate(v)
            )
            spanning.append(gamma.expand_vector(scaled))
    return LinearCode.from_tuples(shape, base, spanning)
