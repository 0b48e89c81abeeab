"""Run the genus-1 resolution suite and print one line per graph.

    python3 scripts/run_suite.py [--seed N] [--filter TEXT]
"""

import argparse
import sys

from locres.suite import SuiteConfig, enumerate_suite, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--filter", default=None)
    args = ap.parse_args()
    raws = enumerate_suite(SuiteConfig(seed=args.seed))
    summary, elapsed = run_suite(raws, seed=args.seed, name_filter=args.filter)
    for r in summary["results"]:
        rep = r.get("report") or {}
        print("%-32s %-12s leaves=%s" % (r["graph"], r["status"], rep.get("leaf_count", "-")))
    c = summary["counts"]
    print("%d graphs, %d pass, %d fail (%.2fs)" % (c["graphs"], c["pass"], c["fail"], elapsed))
    return 0 if c["fail"] == 0 and c["input_error"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
