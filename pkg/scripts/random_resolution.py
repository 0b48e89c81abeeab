"""Derived resolution of seeded random unit x monomial matrices.

    python3 scripts/random_resolution.py [count] [seed]
"""

import sys
import time

from locres.blowup import derived_resolution
from locres.generators import random_matrices


def main(count=10, seed=0):
    for i, phi in enumerate(random_matrices(seed, count)):
        t0 = time.perf_counter()
        tree = derived_resolution(phi, seed=seed)
        print("#%d %dx%d in %s: %d blowups, %d leaves, depth %d (%.2fs)"
              % (i, phi.rows, phi.cols, ",".join(phi.chart.vars), len(tree.steps),
                 len(tree.leaves), tree.depth, time.perf_counter() - t0))


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
