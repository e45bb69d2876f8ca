"""Tabulate sum over labels of dim_left * dim_right against the Fock space dimension."""
import argparse

from qhowe.decomp import classical_dimension, index_set, side_shape
from qhowe.indexsets import Space, count_matrices

FLAVORS = ("A", "Bjj", "Bji", "Bij", "Bii", "Cjj", "Cji", "Cij", "Cii")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=3, help="bound on m and n")
    ap.add_argument("--dmax", type=int, default=4)
    args = ap.parse_args()
    bad = 0
    for f in FLAVORS:
        for m in range(1, args.max + 1):
            for n in range(1, args.max + 1):
                for d in range(args.dmax + 1):
                    s = Space.make(f, m, n, d)
                    total = sum(classical_dimension(lam, side_shape(s, "left"))
                                * classical_dimension(lam, side_shape(s, "right"))
                                for lam in index_set(f, m, n, d))
                    if total != count_matrices(f, m, n, d):
                        bad += 1
                        print(f"mismatch {s}: {total} vs {count_matrices(f, m, n, d)}")
    print(f"{bad} mismatches")


if __name__ == "__main__":
    main()
