"""Print the Thue-Morse Goldbach ratio 8*J0/J for odd N up to a limit.

Usage: python3 scripts/goldbach_sweep.py [N_MAX] [STEP]
"""

import sys

from ggl.arith import sieve
from ggl.goldbach import RepCounts, rep_count_tables


def main(n_max: int = 100_001, step: int = 10_000) -> None:
    table = sieve(n_max + 2)
    tables = rep_count_tables(n_max, table)
    print("N,J,J0,ratio")
    for N in sorted({*range(1 + step, n_max + 1, step), n_max}):
        rc = RepCounts(N, *(int(t[N]) for t in tables))
        print(f"{N},{rc.J},{rc.J0},{rc.ratio!r}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
