# Is the adaptation gain real or seed luck?
#
# Accuracy differences on a single task tell you little: a lucky train/test
# draw can hand either method a few points.  Running both methods on the
# same batch of tasks and pairing their accuracies per task controls for
# task difficulty; a paired two-tailed t-test on the differences then says
# whether the mean gap stands out against its own variance.

import argparse

import numpy as np

from dci.config import RunConfig
from dci.errors import DegenerateInputError
from dci.harness import synthetic_batch
from dci.stats import paired_ttest


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=12,
                        help="number of synthetic tasks to pair over")
    parser.add_argument("--docs", type=int, default=40,
                        help="documents per corpus split")
    args = parser.parse_args()

    config = RunConfig()
    results = synthetic_batch(range(1, args.seeds + 1), config,
                              n_docs_per_split=args.docs)
    by_method: dict[str, list[float]] = {}
    for r in results:
        by_method.setdefault(r.method, []).append(r.accuracy)

    dci = by_method["DCI-Cosine"]
    lower = by_method["Lower"]
    print(f"{'seed':>6} {'Lower':>8} {'DCI':>8} {'diff':>8}")
    for i, (lo, hi) in enumerate(zip(lower, dci), start=1):
        print(f"{i:>6} {lo:>8.4f} {hi:>8.4f} {hi - lo:>+8.4f}")
    print(f"{'mean':>6} {np.mean(lower):>8.4f} {np.mean(dci):>8.4f} "
          f"{np.mean(dci) - np.mean(lower):>+8.4f}")

    print()
    try:
        outcome = paired_ttest(dci, lower)
    except DegenerateInputError as exc:
        # Every task came out with the exact same gap (common when both
        # methods saturate at 1.0); there is no variance to test against.
        print(f"no test possible: {exc}")
        return
    print(f"t = {outcome.t_statistic:.4f}  df = {outcome.degrees_of_freedom}  "
          f"p = {outcome.p_value:.3g}")
    for alpha, significant in sorted(outcome.significant_at.items(),
                                     reverse=True):
        print(f"  significant at alpha={alpha:g}: {'yes' if significant else 'no'}")


if __name__ == "__main__":
    main()
