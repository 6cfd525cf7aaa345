"""Time the Moebius transform and recursive Shapley on long chains and layered DAGs."""

import argparse
import random
import time

from damgshap.algebra import moebius_transform
from damgshap.random_instances import chain_damg, layered_damg, random_value_function
from damgshap.shapley import shapley_recursive
from damgshap.weights import path_uniform_kernel


def run(label, g, rng):
    t0 = time.perf_counter()
    v = random_value_function(rng, g)
    w = moebius_transform(v)
    t1 = time.perf_counter()
    sh = shapley_recursive(g, path_uniform_kernel(g), v)
    t2 = time.perf_counter()
    assert sh.total() == w.total()
    print(f"{label}\t{len(g)}\t{len(g.edges)}\t{t1 - t0:.3f}\t{t2 - t1:.3f}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 2500, 5000, 10000])
    ap.add_argument("--roots", type=int, default=64)
    ap.add_argument("--width", type=int, default=64)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print("graph\tvertices\tedges\tmoebius_s\tshapley_s")
    for n in args.sizes:
        run("chain", chain_damg(n), rng)
        run("layered", layered_damg(rng, n, args.roots, args.width), rng)


if __name__ == "__main__":
    main()
