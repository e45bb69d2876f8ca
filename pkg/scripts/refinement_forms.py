"""Run the refinement identity in its per-orbit form and its single-orbit form."""
import argparse

from qhowe.oracle import refinement_identity_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--primes", default="7,11")
    args = ap.parse_args()
    primes = tuple(int(p) for p in args.primes.split(","))
    for m in (1, 2):
        for literal in (False, True):
            rep = refinement_identity_check(m, args.d, primes=primes, literal=literal)
            print(f"m={m} d={args.d} {rep.name}: checked {rep.checked}, "
                  f"{'pass' if rep.passed else 'fail'}")
            for f in rep.failures[:3]:
                print("   ", f)


if __name__ == "__main__":
    main()
