#!/usr/bin/env python3
"""Exact reconstruction error of the increasing-approximation scheme.

For each target f, rebuilds f/2 from n shift-and-clamp approximants via
one delta value and prints the exact uniform error next to the 2^-n
guarantee.

Usage: python scripts/isbell_table.py [--max-depth N]
"""

import argparse
from fractions import Fraction

from mvdelta.plfunc import (
    increasing_approx,
    isbell_reconstruct,
    pl_const,
    pl_identity,
    pl_neg,
    pl_scale,
    pl_tent,
    uniform_dist,
)
from mvdelta.rationals import Q01


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-depth", type=int, default=8)
    args = parser.parse_args()

    targets = {
        "identity": pl_identity(),
        "reflection": pl_neg(pl_identity()),
        "tent": pl_tent(),
        "const 1/3": pl_const(Fraction(1, 3)),
    }
    print(f"{'target':<12}{'n':>3}  {'exact error':<12}{'guarantee':<12}")
    for name, target in targets.items():
        half = pl_scale(Q01(1, 2), target)
        for n in range(1, args.max_depth + 1):
            result = isbell_reconstruct(increasing_approx(half, n))
            error = uniform_dist(result, half)
            bound = Fraction(1, 2**n)
            flag = "" if error <= bound else "  VIOLATED"
            print(f"{name:<12}{n:>3}  {str(error):<12}{str(bound):<12}{flag}")
        print()


if __name__ == "__main__":
    main()
