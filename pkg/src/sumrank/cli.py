"""Command-line front end.

Each subcommand reads JSON files, runs one library computation, and
prints a JSON report (default) or a plain aligned table.  Identical
inputs and flags give byte-identical output; no value is ever a float.

Exit codes: 0 success, 1 usage or guard errors, 2 invariant violations.
With --oracle every theorem-backed value is recomputed by brute force
and a mismatch also exits 2, because it can only mean a bug.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import combinations, product as iter_product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .anticode import is_optimal_anticode
from .code import DIST_CAP, LinearCode, MatrixTuple, Shape, trace_pairing
from .cover import covering_number, leading_position, meshulam_search
from .errors import (
    EnumerationTooLarge,
    InvariantViolation,
    ParseError,
    SumrankError,
    UsageError,
)
from .genweights import GammaBasis, gamma_expand, gen_weight, subfield_embedding, weight_profile
from .gf import field_from_dict
from .isom import GROUP_CAP, equivalent_codes
from .matfq import MatrixFq
from .msrd import msrd_check
from .wiretap import MI_CAP, WiretapScenario, empirical_mi, leakage_dim, threshold_table

__all__ = ["RunConfig", "parse_args", "run", "main"]

FAMILY_CAP = 10**6


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation."""

    subcommand: str
    paths: Tuple[str, ...]
    variant: str = "product"
    rank: Optional[int] = None  # None means the whole profile
    cap: Optional[int] = None
    seed: int = 0
    oracle: bool = False
    format: str = "json"

    def __post_init__(self):
        if self.cap is not None and self.cap <= 0:
            raise UsageError("--cap must be positive")
        if self.seed < 0:
            raise UsageError("--seed must be nonnegative")
        if self.format not in ("json", "table"):
            raise UsageError(f"unknown format {self.format!r}")


# ---------------------------------------------------------------- file input


def _load(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object at top level")
    return data


def _build(path: str, build: Callable, data):
    """Run a constructor, turning malformed-payload crashes into ParseError."""
    try:
        return build(data)
    except SumrankError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        raise ParseError(f"{path}: malformed payload ({exc})") from None


def _read_code(path: str) -> LinearCode:
    return _build(path, LinearCode.from_dict, _load(path))


def _read_tuple(path: str) -> MatrixTuple:
    return _build(path, MatrixTuple.from_dict, _load(path))


def _read_matrix_list(path: str):
    """Matrix-list payload: {"field": {...}, "mats": [[[...]], ...]}."""
    data = _load(path)

    def build(d):
        ctx = field_from_dict(d["field"])
        return ctx, [MatrixFq(ctx, rows) for rows in d["mats"]]

    return _build(path, build, data)


def _oracle_check(name: str, fast, brute) -> None:
    if fast != brute:
        raise InvariantViolation(
            f"oracle mismatch on {name}: fast path {fast!r}, brute force {brute!r}"
        )


# ---------------------------------------------------------------- subcommands


def _cmd_srk(config: RunConfig) -> dict:
    t = _read_tuple(config.paths[0])
    value = t.srk()
    if config.oracle:
        # column rank equals row rank; compute it through the other side
        brute = sum(b.column_space().dim for b in t.blocks)
        _oracle_check("srk", value, brute)
    return {"srk": value}


def _cmd_dist(config: RunConfig) -> dict:
    code = _read_code(config.paths[0])
    if code.shape.strict:
        value = code.min_distance(method="anticode", cap=config.cap or FAMILY_CAP)
        method = "anticode"
    else:
        value = code.min_distance(method="enumerate", cap=config.cap or DIST_CAP)
        method = "enumerate"
    if config.oracle and method == "anticode":
        brute = code.min_distance(method="enumerate", cap=config.cap or DIST_CAP)
        _oracle_check("distance", value, brute)
    return {"distance": value, "method": method}


def _cmd_dual(config: RunConfig) -> dict:
    code = _read_code(config.paths[0])
    dual = code.dual()
    if config.oracle:
        for t in dual.basis_tuples():
            for c in code.basis_tuples():
                if trace_pairing(t, c) != 0:
                    raise InvariantViolation(
                        "oracle mismatch on dual: nonzero trace pairing"
                    )
        _oracle_check("dual dim", dual.dim, code.ambient_dim - code.dim)
    return dual.to_dict()


def _cmd_gweights(config: RunConfig) -> dict:
    code = _read_code(config.paths[0])
    cap = config.cap or FAMILY_CAP
    if config.rank is None:
        prof = weight_profile(code, config.variant, cap)
        if config.oracle:
            # per-rank early-exit sweeps against the shared sweep
            for r in range(1, code.dim + 1):
                _oracle_check(
                    f"d_{r}", prof.weight(r), gen_weight(code, r, config.variant, cap)
                )
        return prof.to_dict()
    value = gen_weight(code, config.rank, config.variant, cap)
    if config.oracle:
        brute = weight_profile(code, config.variant, cap).weight(config.rank)
        _oracle_check(f"d_{config.rank}", value, brute)
    return {"variant": config.variant, "r": config.rank, "weight": value}


def _cmd_msrd(config: RunConfig) -> dict:
    code = _read_code(config.paths[0])
    report = msrd_check(code, cap=config.cap or FAMILY_CAP)
    if config.oracle:
        enum_cap = config.cap or DIST_CAP
        brute_d = code.min_distance(method="enumerate", cap=enum_cap)
        _oracle_check("distance", report.distance, brute_d)
        _oracle_check(
            "is_msrd",
            report.is_msrd,
            report.remainder == 0 and brute_d == report.distance_bound,
        )
        if report.dual_distance is not None:
            brute_dd = code.dual().min_distance(method="enumerate", cap=enum_cap)
            _oracle_check("dual distance", report.dual_distance, brute_dd)
    return report.to_dict()


def _cmd_anticode(config: RunConfig) -> dict:
    code = _read_code(config.paths[0])
    cap = config.cap or DIST_CAP
    optimal, desc = is_optimal_anticode(code, cap=cap)
    if config.oracle:
        if code.ctx.q**code.dim > cap:
            raise EnumerationTooLarge("oracle enumeration exceeds cap")
        top = 0
        for t in code.iter_codewords():
            top = max(top, t.weighted_rank())
        _oracle_check("is_optimal", optimal, code.dim == top)
        if optimal and desc is not None and desc.materialize() != code:
            raise InvariantViolation(
                "oracle mismatch on descriptor: rebuilt code differs"
            )
    return {
        "is_optimal": optimal,
        "dim": code.dim,
        "descriptor": desc.to_dict() if desc is not None else None,
    }


def _brute_cover_size(points: Sequence[Tuple[int, int]]) -> int:
    """Smallest number of row/column lines covering all points, by subsets."""
    pts = sorted(set(points))
    lines = [("r", r) for r in sorted({p[0] for p in pts})]
    lines += [("c", c) for c in sorted({p[1] for p in pts})]
    if len(lines) > 24:
        raise EnumerationTooLarge(f"{len(lines)} lines is too many for brute cover")
    for size in range(len(lines) + 1):
        for chosen in combinations(lines, size):
            taken = set(chosen)
            if all(("r", r) in taken or ("c", c) in taken for r, c in pts):
                return size
    raise InvariantViolation("full line set failed to cover its own points")


def _cmd_rho(config: RunConfig) -> dict:
    _, mats = _read_matrix_list(config.paths[0])
    res = covering_number(mats)
    if config.oracle:
        brute = _brute_cover_size([leading_position(m) for m in mats])
        _oracle_check("rho", res.rho, brute)
    return {
        "rho": res.rho,
        "pivots": [list(p) for p in res.pivots],
        "witnesses": list(res.witnesses),
    }


def _cmd_meshulam(config: RunConfig) -> dict:
    data = _load(config.paths[0])

    def build(d):
        ctx = field_from_dict(d["field"])
        a = MatrixFq(ctx, d["a"])
        mats = [MatrixFq(ctx, rows) for rows in d["mats"]]
        return a, mats

    a, mats = _build(config.paths[0], build, data)
    res = meshulam_search(a, mats)
    if config.oracle:
        total = a
        for x, mat in zip(res.coeffs, mats):
            if x:
                total = total + mat
        _oracle_check("achieved_rank", res.achieved_rank, total.rank())
        if 2 ** len(mats) > (config.cap or 1 << 16):
            raise EnumerationTooLarge("oracle 0/1 search exceeds cap")
        best = 0
        for xs in iter_product((0, 1), repeat=len(mats)):
            cand = a
            for x, mat in zip(xs, mats):
                if x:
                    cand = cand + mat
            best = max(best, cand.rank())
        if not res.rho <= res.achieved_rank <= best:
            raise InvariantViolation(
                f"oracle mismatch on meshulam: rho {res.rho}, "
                f"achieved {res.achieved_rank}, best {best}"
            )
    return {
        "coeffs": list(res.coeffs),
        "achieved_rank": res.achieved_rank,
        "rho": res.rho,
    }


def _cmd_equiv(config: RunConfig) -> dict:
    first = _read_code(config.paths[0])
    second = _read_code(config.paths[1])
    witness = equivalent_codes(first, second, cap=config.cap or GROUP_CAP)
    if config.oracle and witness is not None:
        if witness.apply_code(first) != second:
            raise InvariantViolation("oracle mismatch on equiv: witness fails")
    return {
        "equivalent": witness is not None,
        "isometry": witness.to_dict() if witness is not None else None,
    }


def _read_taps(path: str, code: LinearCode):
    data = _load(path)

    def build(d):
        if "field" in d and field_from_dict(d["field"]) != code.ctx:
            raise UsageError(f"{path}: tap field differs from the code's field")
        out = []
        for entry in d["taps"]:
            out.append(None if entry is None else MatrixFq(code.ctx, entry))
        return tuple(out)

    return _build(path, build, data)


def _cmd_leak(config: RunConfig) -> dict:
    code = _read_code(config.paths[0])
    taps = _read_taps(config.paths[1], code)
    leak = leakage_dim(code, taps)
    thresholds = threshold_table(code, cap=config.cap or FAMILY_CAP)
    if config.oracle:
        scenario = WiretapScenario(code, taps)
        mi = empirical_mi(scenario, cap=config.cap or MI_CAP)
        _oracle_check("leak_symbols", leak, mi)
    return {"leak_symbols": leak, "threshold_table": list(thresholds)}


def _cmd_expand(config: RunConfig) -> dict:
    data = _load(config.paths[0])

    def build(d):
        base = field_from_dict(d["field"])
        shape = Shape.from_dict(d["shape"])
        spec = d.get("gamma", "monomial")
        if spec == "monomial":
            gamma = GammaBasis.monomial(base, shape)
        else:
            gamma = GammaBasis(base, shape, spec)
        vectors = d["vectors"]
        for v in vectors:
            if len(v) != shape.ell:
                raise ParseError("each vector needs one segment per block")
            for i, seg in enumerate(v):
                top = gamma.exts[i].q
                if len(seg) != shape.n[i] or any(
                    not isinstance(w, int) or not 0 <= w < top for w in seg
                ):
                    raise ParseError(f"bad coordinates in block {i}")
        return gamma, vectors, d.get("subfield_degree")

    gamma, vectors, degree = _build(config.paths[0], build, data)
    code = gamma_expand(gamma, vectors, degree)
    if config.oracle:
        _verify_expansion(gamma, vectors)
    return code.to_dict()


def _verify_expansion(gamma: GammaBasis, vectors) -> None:
    """Check (gamma_i) X_i = v_i entrywise in each extension field."""
    for v in vectors:
        t = gamma.expand_vector(v)
        for i, seg in enumerate(v):
            ext = gamma.exts[i]
            embed = subfield_embedding(gamma.base, ext)
            for c, want in enumerate(seg):
                acc = 0
                for r, gam in enumerate(gamma.bases[i]):
                    x = t.blocks[i].rows[r][c]
                    if x:
                        acc = ext.add(acc, ext.mul(embed[x], gam))
                if acc != want:
                    raise InvariantViolation(
                        f"oracle mismatch on expansion: block {i} column {c}"
                    )


_DISPATCH: Dict[str, Callable[[RunConfig], dict]] = {
    "srk": _cmd_srk,
    "dist": _cmd_dist,
    "dual": _cmd_dual,
    "gweights": _cmd_gweights,
    "msrd": _cmd_msrd,
    "anticode": _cmd_anticode,
    "rho": _cmd_rho,
    "meshulam": _cmd_meshulam,
    "equiv": _cmd_equiv,
    "leak": _cmd_leak,
    "expand": _cmd_expand,
}


# ------------------------------------------------------------------- output


def _table_lines(report: dict, indent: str = "") -> List[str]:
    scalar_keys = [
        k
        for k, v in report.items()
        if not isinstance(v, (dict, list)) or _is_scalar_list(v)
    ]
    width = max((len(k) for k in scalar_keys), default=0)
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_table_lines(value, indent + "  "))
        elif isinstance(value, list) and not _is_scalar_list(value):
            lines.append(f"{indent}{key}: {json.dumps(value)}")
        elif isinstance(value, list):
            joined = " ".join(_cell(x) for x in value)
            lines.append(f"{indent}{key:<{width}}  {joined}")
        else:
            lines.append(f"{indent}{key:<{width}}  {_cell(value)}")
    return lines


def _is_scalar_list(value) -> bool:
    return isinstance(value, list) and all(
        isinstance(x, (int, str)) and not isinstance(x, bool) for x in value
    )


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _srk_table(report: dict) -> List[str]:
    return [str(report["srk"])]


def _gweights_table(report: dict) -> List[str]:
    if "weights" not in report:
        return _table_lines(report)
    lines = [f"variant {report['variant']}", "r  d_r"]
    for r, d in enumerate(report["weights"], start=1):
        lines.append(f"{r:<2} {d}")
    return lines


_TABLES: Dict[str, Callable[[dict], List[str]]] = {
    "srk": _srk_table,
    "gweights": _gweights_table,
}


def _emit(config: RunConfig, report: dict) -> str:
    if config.format == "json":
        return json.dumps(report, indent=2) + "\n"
    renderer = _TABLES.get(config.subcommand, _table_lines)
    return "\n".join(renderer(report)) + "\n"


# ------------------------------------------------------------------ parsing


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; route it through the exit-code contract
    def error(self, message: str):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cap", type=int, metavar="N", help="enumeration guard")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument(
        "--oracle",
        action="store_true",
        help="recompute theorem-path values by brute force and compare",
    )
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = _Parser(prog="sumrank", description="sum-rank metric code toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name, help_text, npaths=1, metavar="code.json"):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("paths", nargs=npaths, metavar=metavar)
        return p

    add("srk", "sum-rank weight of one matrix tuple", metavar="tuple.json")
    add("dist", "minimum sum-rank distance of a code")
    add("dual", "trace dual of a code, emitted as code JSON")
    p = add("gweights", "generalized sum-rank weights")
    p.add_argument(
        "--variant",
        choices=("product", "all", "supp", "support"),
        default="product",
        help="anticode family (supp = column-support products)",
    )
    p.add_argument("--r", dest="rank", default="all", metavar="all|k")
    add("msrd", "maximum sum-rank distance report")
    add("anticode", "optimal-anticode test and classification")
    add("rho", "covering number of a leading-position pattern", metavar="mats.json")
    add("meshulam", "0/1 combination reaching the covering number", metavar="mats.json")
    add("equiv", "isometry search between two codes", npaths=2)
    add("leak", "wiretap leakage and thresholds", npaths=2, metavar="file.json")
    add("expand", "base-field expansion of a subfield-linear code", metavar="gamma.json")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = _build_parser().parse_args(argv)
    rank: Optional[int] = None
    raw = getattr(args, "rank", "all")
    if raw != "all":
        try:
            rank = int(raw)
        except ValueError:
            raise UsageError(f"--r expects 'all' or an integer, got {raw!r}") from None
        if rank < 1:
            raise UsageError("--r must be at least 1")
    variant = getattr(args, "variant", "product")
    if variant == "supp":
        variant = "support"
    return RunConfig(
        subcommand=args.subcommand,
        paths=tuple(args.paths),
        variant=variant,
        rank=rank,
        cap=args.cap,
        seed=args.seed,
        oracle=args.oracle,
        format=args.format,
    )


def run(config: RunConfig) -> Tuple[int, dict]:
    """Execute one invocation; exceptions map onto the exit-code contract."""
    try:
        return 0, _DISPATCH[config.subcommand](config)
    except UsageError as exc:
        return 1, {"error": str(exc)}
    except InvariantViolation as exc:
        return 2, {"invariant_violation": str(exc)}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status, report = run(config)
    if status == 0:
        sys.stdout.write(_emit(config, report))
    else:
        key = "error" if status == 1 else "invariant_violation"
        print(f"{key}: {report[key]}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
