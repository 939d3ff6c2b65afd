"""Points near the honeycomb critical lattice with certified decomposition lower bounds.

    python scripts/worstcase_points.py --k 3 --eps 1/2 --count 3
"""

import argparse
import sys

from simdioph.decompose import brute_force_decomposition, worstcase_sequence
from simdioph.exact import parse_q


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--eps", default="1/2")
    p.add_argument("--count", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--experimental-k2", action="store_true")
    p.add_argument("--brute-force", action="store_true",
                   help="also compute the exact optimum (slow for large n)")
    a = p.parse_args(argv)
    eps = parse_q(a.eps)
    pts = worstcase_sequence(a.k, eps, a.count, seed=a.seed, allow_k2=a.experimental_k2)
    for pt in pts:
        cert = pt.certificate
        line = (f"t={pt.point.t} tvec={pt.point.tvec} delta={pt.delta} n={pt.point.n} "
                f"ratio^k >= {float(cert.bound_power):.6f} threshold "
                f"{float((1 - eps) ** a.k / (a.k + 1)):.6f}")
        if a.brute_force:
            line += f" optimum={float(brute_force_decomposition(pt.point.n).ratio_power()):.6f}"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
