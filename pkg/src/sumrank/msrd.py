"""Maximum sum-rank distance codes: bounds, criteria, weight formulas.

The dimension of a strict product space decomposes uniquely against the
suffix masses T_j = sum of m_i n_i over i >= j, which pins the largest
distance a code of that dimension can have.  Codes meeting it are MSRD;
the module checks the definition, four bordering criteria, the
column-window characterization, and the closed-form weight hierarchy,
cross-asserting every equivalence the theory promises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .anticode import AnticodeDescriptor, BlockSupport, enumerate_anticodes, product_descriptors
from .code import LinearCode, Shape
from .errors import (
    DimNotAdmissible,
    InvariantViolation,
    RankOutOfRange,
    ShapeMismatch,
    TrivialCode,
)
from .genweights import weight_profile
from .matfq import Subspace

__all__ = [
    "suffix_masses",
    "dim_decomposition",
    "distance_decomposition",
    "d_max_for_dim",
    "r_mu",
    "anticode_dim_extremes",
    "singleton_distance_bound",
    "admissible_ranks",
    "msrd_weight_profile",
    "MsrdReport",
    "msrd_check",
    "r_msrd_check",
]


def suffix_masses(shape: Shape) -> Tuple[int, ...]:
    """T_j = dim of the product of blocks j..ell-1, plus a trailing 0."""
    out = [0] * (shape.ell + 1)
    for i in range(shape.ell - 1, -1, -1):
        out[i] = out[i + 1] + shape.m[i] * shape.n[i]
    return tuple(out)


def dim_decomposition(shape: Shape, dim: int) -> Tuple[int, int, int]:
    """Unique (j, delta, s) with dim = T_j - delta*m_j - s, 0 <= s < m_j.

    j is 0-based; delta stays below n_j.  Codes can only be MSRD when the
    remainder s vanishes.
    """
    masses = suffix_masses(shape)
    if not 1 <= dim <= masses[0]:
        raise DimNotAdmissible(f"dimension {dim} outside 1..{masses[0]}")
    j = max(i for i in range(shape.ell) if masses[i] >= dim)
    rest = masses[j] - dim
    delta, s = divmod(rest, shape.m[j])
    assert delta <= shape.n[j] - 1
    return j, delta, s


def distance_decomposition(shape: Shape, d: int) -> Tuple[int, int]:
    """Unique (j, delta) with d = (columns before block j) + delta + 1."""
    if not 1 <= d <= shape.ncols:
        raise DimNotAdmissible(f"distance {d} outside 1..{shape.ncols}")
    j = shape.block_of_column(d)
    before = sum(shape.n[:j])
    return j, d - 1 - before


def d_max_for_dim(shape: Shape, dim: int) -> int:
    """Largest admissible distance for an exactly-decomposable dimension."""
    j, delta, s = dim_decomposition(shape, dim)
    if s:
        raise DimNotAdmissible(f"dimension {dim} leaves remainder {s} in block {j}")
    return sum(shape.n[:j]) + delta + 1


def r_mu(shape: Shape, mu: int) -> int:
    """Largest dimension of a weight-mu product anticode (prefix fill)."""
    if mu == 0:
        return 0
    j, delta = distance_decomposition(shape, mu)
    return sum(m * n for m, n in zip(shape.m[:j], shape.n[:j])) + (delta + 1) * shape.m[j]


def anticode_dim_extremes(shape: Shape, mu: int) -> Tuple[int, int]:
    """(min, max) dimension over weight-mu product anticodes.

    The max fills columns from the heaviest blocks forward, the min from
    the lightest blocks backward.
    """
    if not 0 <= mu <= shape.ncols:
        raise DimNotAdmissible(f"weight {mu} outside 0..{shape.ncols}")
    big = r_mu(shape, mu)
    rest = mu
    small = 0
    for i in range(shape.ell - 1, -1, -1):
        take = min(rest, shape.n[i])
        small += take * shape.m[i]
        rest -= take
    assert small <= big
    return small, big


def singleton_distance_bound(shape: Shape, dim: int) -> int:
    """Sharpest distance bound for the given dimension."""
    masses = suffix_masses(shape)
    for d in range(shape.ncols, 0, -1):
        j, delta = distance_decomposition(shape, d)
        if dim <= masses[j] - shape.m[j] * delta:
            return d
    raise DimNotAdmissible(f"dimension {dim} admits no distance")


def admissible_ranks(shape: Shape, dim: int) -> Dict[int, int]:
    """Map r -> h over the column range of an exactly-decomposable code.

    r = r_h - r_(dmax-1) - m_k + 1 walks the ranks at which the weight
    hierarchy of an MSRD code steps to column h; consecutive entries are
    m_k apart, which the construction re-checks.
    """
    dmax = d_max_for_dim(shape, dim)
    base = r_mu(shape, dmax - 1)
    if base != shape.ambient_dim - dim:
        raise InvariantViolation("prefix mass must complement the dimension")
    out: Dict[int, int] = {}
    prev: Optional[Tuple[int, int]] = None
    for h in range(dmax, shape.ncols + 1):
        k = shape.block_of_column(h)
        r = r_mu(shape, h) - base - shape.m[k] + 1
        if prev is not None and r != prev[0] + shape.m[prev[1]]:
            raise InvariantViolation("rank steps must advance by the block row count")
        out[r] = h
        prev = (r, k)
    assert prev is not None
    if prev[0] + shape.m[prev[1]] - 1 != dim:
        raise InvariantViolation("the rank walk must end at the code dimension")
    return out


def msrd_weight_profile(shape: Shape, dim: int) -> Tuple[int, ...]:
    """Closed-form weights of an MSRD code of the given dimension."""
    weights = [0] * dim
    for r, h in admissible_ranks(shape, dim).items():
        k = shape.block_of_column(h)
        for t in range(r, r + shape.m[k]):
            weights[t - 1] = h
    if 0 in weights or list(weights) != sorted(weights):
        raise InvariantViolation("the closed form must fill a monotone profile")
    return tuple(weights)


def _column_window_descriptor(
    shape: Shape, ctx, columns: frozenset
) -> AnticodeDescriptor:
    """Product anticode of everything supported on the given 1-based columns."""
    offsets = [0]
    for n in shape.n:
        offsets.append(offsets[-1] + n)
    blocks = []
    for i in range(shape.ell):
        local = [c - offsets[i] - 1 for c in columns if offsets[i] < c <= offsets[i + 1]]
        vecs = [tuple(1 if t == c else 0 for t in range(shape.n[i])) for c in local]
        blocks.append(BlockSupport("col", Subspace.from_vectors(ctx, shape.n[i], vecs)))
    return AnticodeDescriptor(shape, ctx, tuple(blocks))


@dataclass(frozen=True)
class MsrdReport:
    """msrd_check output: the decomposition, the verdicts, the criteria."""

    dim: int
    distance: int
    block: int
    delta: int
    remainder: int
    distance_bound: int
    is_msrd: bool
    c0: bool
    c1: bool
    c2: bool
    c3: Optional[bool]
    column_window: bool
    equal_rows: bool
    dual_distance: Optional[int]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "distance": self.distance,
            "distance_bound": self.distance_bound,
            "block": self.block,
            "delta": self.delta,
            "remainder": self.remainder,
            "is_msrd": self.is_msrd,
            "criteria": {
                "c0": self.c0,
                "c1": self.c1,
                "c2": self.c2,
                "c3": self.c3,
                "column_window": self.column_window,
            },
            "equal_rows": self.equal_rows,
            "dual_distance": self.dual_distance,
        }


def _is_msrd_by_numbers(shape: Shape, dim: int, distance: int) -> bool:
    _, _, s = dim_decomposition(shape, dim)
    return s == 0 and distance == singleton_distance_bound(shape, dim)


def msrd_check(code: LinearCode, cap: int = 10**6) -> MsrdReport:
    """Full criteria battery with the theory's equivalences re-asserted.

    Any disagreement between the definition and a criterion that should
    match it raises InvariantViolation rather than returning a report.
    """
    shape, ctx = code.shape, code.ctx
    if not shape.strict:
        raise ShapeMismatch("MSRD theory lives in strict shapes")
    if code.dim == 0:
        raise TrivialCode("the zero code has no distance")
    n = shape.ncols
    ambient = shape.ambient_dim
    d = code.min_distance(method="anticode", cap=cap)
    j, delta, s = dim_decomposition(shape, code.dim)
    bound = singleton_distance_bound(shape, code.dim)
    if d > bound:
        raise InvariantViolation("distance exceeds the dimension bound")
    is_msrd = s == 0 and d == bound

    # C0: every largest anticode one short of the distance complements the code
    if d == 1:
        c0 = code.dim == ambient
    else:
        target = r_mu(shape, d - 1)
        c0 = all(
            code.add(desc.materialize()).dim == ambient
            for desc in enumerate_anticodes(ctx, shape, d - 1, "all", cap)
            if desc.dim() == target
        )

    # C1: exact dimension and zero intersection below the admissible distance
    c1 = s == 0
    if c1:
        dmax = sum(shape.n[:j]) + delta + 1
        for mu in range(1, dmax):
            if not c1:
                break
            for desc in enumerate_anticodes(ctx, shape, mu, "all", cap):
                if code.intersect(desc.materialize()).dim:
                    c1 = False
                    break

    # C2: products at the distance meet the code in at least m_k dimensions
    c2 = True
    for desc in product_descriptors(ctx, shape, d, allow_row=True, cap=cap):
        k = desc.last_support_block()
        assert k is not None
        if code.intersect(desc.materialize()).dim < shape.m[k]:
            c2 = False
            break

    # column windows: first d-1 columns plus one sliding column
    window = True
    for h in range(d, n + 1):
        k = shape.block_of_column(h)
        cols = frozenset(range(1, d)) | {h}
        desc = _column_window_descriptor(shape, ctx, cols)
        if code.intersect(desc.materialize()).dim != shape.m[k]:
            window = False
            break

    # C3: the two distances fill the column count plus two
    dual = code.dual()
    dual_d: Optional[int] = None
    c3: Optional[bool] = None
    if dual.dim:
        dual_d = dual.min_distance(method="anticode", cap=cap)
        c3 = d + dual_d == n + 2

    equal_rows = all(m == shape.m[0] for m in shape.m)

    if c0 != is_msrd:
        raise InvariantViolation("criterion c0 must match the definition")
    if c1 != is_msrd:
        raise InvariantViolation("criterion c1 must match the definition")
    if c2 and not is_msrd:
        raise InvariantViolation("criterion c2 must imply the definition")
    if equal_rows and c2 != is_msrd:
        raise InvariantViolation("criterion c2 must match the definition for equal rows")
    if window != is_msrd:
        raise InvariantViolation("the column windows must match the definition")
    if c3 is not None:
        both = is_msrd and _is_msrd_by_numbers(shape, dual.dim, dual_d)
        # only one direction survives unequal row counts: a pair of extremal
        # codes can attain their bounds at different decomposition points,
        # leaving d + d' short of n + 2
        if c3 and not both:
            raise InvariantViolation("criterion c3 must imply both-sides MSRD")
        if c3 and not equal_rows:
            raise InvariantViolation("criterion c3 forces equal row counts")
        if equal_rows and c3 != is_msrd:
            raise InvariantViolation("criterion c3 must match the definition for equal rows")

    return MsrdReport(
        dim=code.dim,
        distance=d,
        block=j,
        delta=delta,
        remainder=s,
        distance_bound=bound,
        is_msrd=is_msrd,
        c0=c0,
        c1=c1,
        c2=c2,
        c3=c3,
        column_window=window,
        equal_rows=equal_rows,
        dual_distance=dual_d,
    )


def r_msrd_check(code: LinearCode, r: int, cap: int = 10**6) -> bool:
    """Does the weight hierarchy hit its column at rank r?

    True means d_r equals the h tied to r; the run up to r + m_k - 1 and
    the step to the next admissible rank are then re-verified, since the
    theory guarantees both.
    """
    shape = code.shape
    if not shape.strict:
        raise ShapeMismatch("MSRD theory lives in strict shapes")
    if code.dim == 0:
        raise TrivialCode("the zero code has no weights")
    ranks = admissible_ranks(shape, code.dim)
    if r not in ranks:
        raise RankOutOfRange(f"rank {r} is not tied to a column; valid: {sorted(ranks)}")
    h = ranks[r]
    prof = weight_profile(code, "product", cap).weights
    if prof[r - 1] != h:
        return False
    k = shape.block_of_column(h)
    if any(prof[t - 1] != h for t in range(r, r + shape.m[k])):
        raise InvariantViolation("the run below the next rank must be constant")
    if h < shape.ncols:
        nxt = r + shape.m[k]
        if ranks.get(nxt) != h + 1 or prof[nxt - 1] != h + 1:
            raise InvariantViolation("a satisfied rank must propagate to the next")
    return True
