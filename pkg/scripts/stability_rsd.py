"""1-NN accuracy and its RSD across random train/test splits.

For each split seed the selection runs on the training part only, then the
chosen subset is scored on the held-out part.  Prints mean accuracy and
RSD per method and subset size.
"""

import argparse

import numpy as np

from wassfs.csvio import load_csv
from wassfs.data import standardization_stats, standardize
from wassfs.evaluation import evaluate_subset, rsd, train_test_split
from wassfs.selection import METHODS, SelectionConfig, select
from wassfs.synthetic import SyntheticSpec, gen_synthetic


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--input", default=None, help="labeled CSV (default: a synthetic mixture)")
    ap.add_argument("--label-col", default=None)
    ap.add_argument("--splits", type=int, default=10)
    ap.add_argument("--test-frac", type=float, default=0.3)
    ap.add_argument("-m", type=int, nargs="+", default=[1, 2, 4])
    ap.add_argument("--methods", nargs="+", choices=METHODS, default=["twd", "fawd"])
    ap.add_argument("--noise", type=float, default=0.3)
    args = ap.parse_args()

    if args.input:
        ds = load_csv(args.input, args.label_col)
    else:
        ds = gen_synthetic(SyntheticSpec(n_per_class=60, n_features=10, shift=1.0,
                                         noise_sigma=args.noise, seed=0))

    for method in args.methods:
        for m in args.m:
            acc = []
            for split in range(args.splits):
                train, test = train_test_split(ds, args.test_frac, split)
                stats = standardization_stats(train)
                train, test = standardize(train, stats), standardize(test, stats)
                res = select(train, method, SelectionConfig(m=m))
                acc.append(evaluate_subset(train, test, res.selected))
            print(f"{method:>5} m={m:<3} accuracy {np.mean(acc):.3f}  RSD {rsd(acc):.4f}")


if __name__ == "__main__":
    main()
