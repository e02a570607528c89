"""Wiretap leakage sweep for one coset-coding scheme.

Prints the dual support-weight thresholds, then the worst-case leakage
as a function of the number of tapped links, and finally spot-checks the
dual-intersection formula against exhaustive mutual information on a few
random tap profiles.
"""

import argparse
import random
from dataclasses import dataclass

from sumrank import (
    LinearCode,
    Shape,
    WiretapScenario,
    empirical_mi,
    leakage_dim,
    threshold_table,
    worst_case_leakage,
)
from sumrank.gf import FieldContext
from sumrank.matfq import MatrixFq


@dataclass(frozen=True)
class SweepConfig:
    q: int
    m: tuple
    n: tuple
    dim: int
    spot_checks: int
    seed: int


def parse_config() -> SweepConfig:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--m", type=int, nargs="+", default=[2, 2])
    parser.add_argument("--n", type=int, nargs="+", default=[2, 2])
    parser.add_argument("--dim", type=int, default=4)
    parser.add_argument("--spot-checks", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    return SweepConfig(
        args.q, tuple(args.m), tuple(args.n), args.dim, args.spot_checks, args.seed
    )


def main() -> None:
    config = parse_config()
    ctx = FieldContext(config.q, 1)
    shape = Shape(config.m, config.n)
    rng = random.Random(config.seed)
    while True:
        rows = [
            tuple(rng.randrange(ctx.q) for _ in range(shape.ambient_dim))
            for _ in range(config.dim)
        ]
        code = LinearCode(shape, ctx, rows)
        if code.dim == config.dim:
            break
    print(f"code of dim {code.dim} on {shape.m} x {shape.n} over F_{ctx.q}")
    print(f"thresholds (links needed for r leaked symbols): {threshold_table(code)}")
    for mu in range(shape.ncols + 1):
        print(f"  mu = {mu}: worst-case leakage {worst_case_leakage(code, mu)}")
    for _ in range(config.spot_checks):
        taps = []
        for i in range(shape.ell):
            links = rng.randint(0, shape.n[i])
            if links == 0:
                taps.append(None)
                continue
            taps.append(
                MatrixFq(
                    ctx,
                    [
                        [rng.randrange(ctx.q) for _ in range(links)]
                        for _ in range(shape.n[i])
                    ],
                )
            )
        formula = leakage_dim(code, tuple(taps))
        exhaustive = empirical_mi(WiretapScenario(code, tuple(taps)))
        tapped = sum(b.n for b in taps if b is not None)
        verdict = "ok" if formula == exhaustive else "MISMATCH"
        print(
            f"  random profile, {tapped} links: formula {formula},"
            f" exhaustive MI {exhaustive} [{verdict}]"
        )


if __name__ == "__main__":
    main()
