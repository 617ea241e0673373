"""Relative error of the Sinkhorn sharp cost against brute-force matching.

Sweeps the regularization (as a multiple of the mean cost) on small
uniform point clouds.
"""

import argparse

import numpy as np

from wassfs.entropic import SinkhornConfig, TransportProblem, cost_matrix, sinkhorn
from wassfs.oracles import exact_ot_assignment


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problems", type=int, default=200)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--epsilons", type=float, nargs="+", default=[0.2, 0.1, 0.05, 0.01, 0.005])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for eps in args.epsilons:
        rng = np.random.default_rng(args.seed)
        errs, iters, unconverged = [], [], 0
        for _ in range(args.problems):
            x = rng.uniform(-1, 1, (args.n, args.dim))
            y = rng.uniform(-1, 1, (args.n, args.dim))
            res = sinkhorn(TransportProblem.uniform(cost_matrix(x, y)), SinkhornConfig(epsilon=eps))
            exact = exact_ot_assignment(x, y)
            errs.append(abs(res.sharp_cost - exact) / exact)
            iters.append(res.iterations)
            unconverged += not res.converged
        print(f"eps {eps:6.3f}: median rel err {np.median(errs):.2e}, max {np.max(errs):.2e}, "
              f"median iters {int(np.median(iters))}, unconverged {unconverged}")


if __name__ == "__main__":
    main()
