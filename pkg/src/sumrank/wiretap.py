"""Coset-coding leakage over wiretapped multishot networks.

A message from a complement of the code is masked by a uniform codeword
and each block travels through its own linearly coded network; a tap of
B_i on block i reveals D_i B_i.  The leaked information in base-q
symbols is the dimension of the dual code met with the product of the
tap column spaces, and an exhaustive mutual-information computation
reproduces it exactly.  Strictness of the shape is never assumed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .anticode import AnticodeDescriptor, BlockSupport, product_descriptors
from .code import LinearCode, Shape
from .errors import (
    ContextMismatch,
    EnumerationTooLarge,
    InvariantViolation,
    ShapeMismatch,
)
from .genweights import gen_weight, weight_profile
from .matfq import MatrixFq, Subspace

__all__ = [
    "canonical_complement",
    "support_product",
    "leakage_dim",
    "worst_case_leakage",
    "WiretapScenario",
    "empirical_mi",
    "leakage_threshold",
    "threshold_table",
    "MI_CAP",
]

MI_CAP = 1 << 20


def canonical_complement(code: LinearCode) -> LinearCode:
    """Span of the unit vectors on the code's non-pivot coordinates."""
    ambient = code.ambient_dim
    pivots = set(code.pivots)
    rows = [
        tuple(1 if j == c else 0 for j in range(ambient))
        for c in range(ambient)
        if c not in pivots
    ]
    comp = LinearCode(code.shape, code.ctx, rows)
    assert comp.dim + code.dim == ambient
    assert comp.intersect(code).dim == 0
    return comp


def _tap_supports(
    code: LinearCode, taps: Sequence[Optional[MatrixFq]]
) -> List[Subspace]:
    shape = code.shape
    if len(taps) != shape.ell:
        raise ShapeMismatch("one tap matrix per block")
    spaces = []
    for i, b in enumerate(taps):
        if b is None:
            # untapped block: nothing observed, support space is zero
            spaces.append(Subspace.zero(code.ctx, shape.n[i]))
            continue
        if b.ctx != code.ctx:
            raise ContextMismatch(f"tap {i} over a different field context")
        if b.m != shape.n[i]:
            raise ShapeMismatch(f"tap {i} must have {shape.n[i]} rows")
        spaces.append(b.column_space())
    return spaces


def support_product(
    shape: Shape, ctx, spaces: Sequence[Subspace]
) -> AnticodeDescriptor:
    """The product of row-support spaces over the given column spaces."""
    blocks = tuple(BlockSupport("col", sp) for sp in spaces)
    return AnticodeDescriptor(shape, ctx, blocks)


def leakage_dim(code: LinearCode, taps: Sequence[Optional[MatrixFq]]) -> int:
    """Symbols leaked to a tap profile: dim of the dual inside the taps'
    support product."""
    spaces = _tap_supports(code, taps)
    desc = support_product(code.shape, code.ctx, spaces)
    return code.dual().intersect(desc.materialize()).dim


def worst_case_leakage(code: LinearCode, mu: int, cap: int = 10**6) -> int:
    """Max leakage over all tap profiles with mu links total."""
    if not 0 <= mu <= code.shape.ncols:
        raise ShapeMismatch(f"links {mu} outside 0..{code.shape.ncols}")
    dual = code.dual()
    best = 0
    for desc in product_descriptors(code.ctx, code.shape, mu, allow_row=False, cap=cap):
        best = max(best, dual.intersect(desc.materialize()).dim)
    return best


@dataclass
class WiretapScenario:
    """A code, a complementary message space, and per-block tap matrices."""

    code: LinearCode
    taps: Tuple[Optional[MatrixFq], ...]
    message_space: Optional[LinearCode] = None

    def __post_init__(self):
        self.taps = tuple(self.taps)
        _tap_supports(self.code, self.taps)
        if self.message_space is None:
            self.message_space = canonical_complement(self.code)
        else:
            msg = self.message_space
            if msg.shape != self.code.shape or msg.ctx != self.code.ctx:
                raise ShapeMismatch("message space lives in a different ambient")
            if (
                msg.dim + self.code.dim != self.code.ambient_dim
                or msg.intersect(self.code).dim != 0
            ):
                raise ShapeMismatch("message space must complement the code")

    @property
    def tapped_links(self) -> int:
        return sum(b.n for b in self.taps if b is not None)

    def observe_flat(self, flat: Sequence[int]) -> Tuple[int, ...]:
        """Flattened (D_1 B_1, ..., D_ell B_ell) for a flattened D."""
        shape, ctx = self.code.shape, self.code.ctx
        offsets = shape.block_offsets()
        out: List[int] = []
        for i in range(shape.ell):
            b = self.taps[i]
            if b is None:
                continue
            mm, nn = shape.m[i], shape.n[i]
            seg = flat[offsets[i] : offsets[i] + mm * nn]
            for r in range(mm):
                row = seg[r * nn : (r + 1) * nn]
                for c in range(b.n):
                    acc = 0
                    for t in range(nn):
                        x = row[t]
                        if x:
                            acc = ctx.add(acc, ctx.mul(x, b.rows[t][c]))
                    out.append(acc)
        return tuple(out)


def _exact_log_q(value: Fraction, q: int) -> int:
    """log_q of an exact q-power; anything else breaks linearity."""
    if value <= 0:
        raise InvariantViolation("log of a nonpositive probability ratio")
    num, den = value.numerator, value.denominator
    out = 0
    while num % q == 0:
        num //= q
        out += 1
    while den % q == 0:
        den //= q
        out -= 1
    if num != 1 or den != 1:
        raise InvariantViolation(f"{value} is not a power of {q}")
    return out


def _entropy_q(counts: Dict, total: int, q: int) -> Fraction:
    """Base-q entropy of a count table, exact."""
    acc = Fraction(0)
    for c in counts.values():
        p = Fraction(c, total)
        acc -= p * _exact_log_q(p, q)
    return acc


def empirical_mi(scenario: WiretapScenario, cap: int = MI_CAP) -> int:
    """Exhaustive I_q(M; W) over all message-codeword pairs.

    Every distribution that appears is uniform on a q-power support, so
    the entropies are exact integers and the result matches leakage_dim.
    """
    code = scenario.code
    ctx = code.ctx
    q = ctx.q
    msg = scenario.message_space
    assert msg is not None
    pairs = q**code.ambient_dim
    if pairs > cap:
        raise EnumerationTooLarge(f"{pairs} pairs exceed cap {cap}")
    msg_flats = list(msg.iter_flat(include_zero=True))
    observed_code = [scenario.observe_flat(c) for c in code.iter_flat(include_zero=True)]
    observed_msg = [scenario.observe_flat(m) for m in msg_flats]
    m_counts: Dict[int, int] = {}
    w_counts: Dict[Tuple[int, ...], int] = {}
    joint_counts: Dict[Tuple[int, Tuple[int, ...]], int] = {}
    width = len(observed_msg[0]) if observed_msg else 0
    for mi_idx, wm in enumerate(observed_msg):
        for wc in observed_code:
            w = tuple(ctx.add(a, b) for a, b in zip(wm, wc)) if width else ()
            m_counts[mi_idx] = m_counts.get(mi_idx, 0) + 1
            w_counts[w] = w_counts.get(w, 0) + 1
            key = (mi_idx, w)
            joint_counts[key] = joint_counts.get(key, 0) + 1
    total = len(observed_msg) * len(observed_code)
    mi = (
        _entropy_q(m_counts, total, q)
        + _entropy_q(w_counts, total, q)
        - _entropy_q(joint_counts, total, q)
    )
    if mi.denominator != 1:
        raise InvariantViolation(f"mutual information {mi} is not an integer")
    return int(mi)


def leakage_threshold(code: LinearCode, r: int, cap: int = 10**6) -> int:
    """Fewest tapped links forcing r leaked symbols: the r-th support
    weight of the dual code."""
    return gen_weight(code.dual(), r, "support", cap)


def threshold_table(code: LinearCode, cap: int = 10**6) -> Tuple[int, ...]:
    """All leakage thresholds of the dual at once."""
    return weight_profile(code.dual(), "support", cap).weights
