"""Compare the t0 values realized on highest-weight lines with two closed forms.

For iota sides the candidates are [1 + lam+ - lam-] and [d + lam+ - lam-]; for
jmath sides [lam-_1 - lam+_2] and its negative.  Prints one row per summand.
"""
import argparse

from qhowe.decomp import verify_decomposition
from qhowe.ring import quantum_integer, to_text


def _parts(text):
    plus, minus = text.strip("()").split("],[")
    parse = lambda s: [int(x) for x in s.strip("[]").split(",") if x.strip()]  # noqa: E731
    return parse(plus), parse(minus)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=3)
    args = ap.parse_args()
    for flavor in ("Bii", "Bjj"):
        for d in range(1, args.dmax + 1):
            rep = verify_decomposition(flavor, 1, 1, d)
            for s in rep.summands:
                p, m = _parts(s["lambda"])
                p0 = p[0] if p else 0
                p1 = p[1] if len(p) > 1 else 0
                m0 = m[0] if m else 0
                if flavor == "Bii":
                    cands = {"1+l+-l-": quantum_integer(1 + p0 - m0), "d+l+-l-": quantum_integer(d + p0 - m0)}
                else:
                    cands = {"l-1-l+2": quantum_integer(m0 - p1), "l+2-l-1": quantum_integer(p1 - m0)}
                hits = [k for k, v in cands.items() if to_text(v) == s["left_t"][0]]
                print(f"{flavor} d={d} {s['lambda']:>14}  t0={s['left_t'][0]:<24} matches {hits}")


if __name__ == "__main__":
    main()
