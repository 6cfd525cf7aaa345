"""Sweep the three-body coupling of the four-spin Ising game.

Writes a TSV of J_bcd, Sh_a, Sh_d and their ratio; plot it with any tool.
"""

import argparse
from fractions import Fraction

from damgshap.demos import ising_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=6, help="largest J_bcd")
    ap.add_argument("--steps", type=int, default=4, help="grid points per unit of J_bcd")
    ap.add_argument("--beta", type=Fraction, default=Fraction(1))
    args = ap.parse_args(argv)
    grid = [Fraction(k, args.steps) for k in range(args.max * args.steps + 1)]
    print("J_bcd\tSh_a\tSh_d\tratio")
    for x, sa, sd, ratio in ising_sweep(grid, args.beta):
        r = "" if ratio is None else f"{float(ratio):.6g}"
        print(f"{x}\t{sa}\t{sd}\t{r}")


if __name__ == "__main__":
    main()
