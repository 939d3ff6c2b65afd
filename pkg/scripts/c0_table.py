"""Best decomposition ratio for every canonical n with h(n) <= N.

    python scripts/c0_table.py --k 2 --N 40 --out c0_k2.csv
"""

import argparse
import csv
import sys
import time

from simdioph.decompose import c0_bound_power, c0_sweep, height


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--min-height", type=int, default=1)
    p.add_argument("--top", type=int, default=10, help="print this many largest ratios")
    p.add_argument("--out", help="CSV file for the full table")
    a = p.parse_args(argv)
    start = time.perf_counter()
    res = c0_sweep(a.k, a.N, a.min_height)
    print(f"vectors={len(res.table)} max ratio^k={res.max_power} (~{float(res.max_power):.6f}) "
          f"bound={c0_bound_power(a.k)} time={time.perf_counter() - start:.1f}s")
    best = sorted(res.table, key=lambda d: d.ratio_power(), reverse=True)[:a.top]
    for d in best:
        print(f"  n={d.n} h={height(d.n)} p={d.p} q={d.q} u={d.u} v={d.v} ratio^k={d.ratio_power()}")
    if a.out:
        with open(a.out, "w", newline="") as fh:
            csv.writer(fh).writerows(res.csv_rows())
    return 0


if __name__ == "__main__":
    sys.exit(main())
