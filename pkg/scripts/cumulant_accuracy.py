"""Accuracy of cumulant() against 50-digit derivatives of the log-MGF.

    python scripts/cumulant_accuracy.py [--orders 2 5 10 20]
"""

import argparse

import mpmath as mp

from langexp.truncexp import TruncExp, cumulant


def reference(x, k):
    # unit support [0, 1], so delta = 1/2 and gamma = 2x
    g = mp.mpf(2 * x)

    def log_mgf(s):
        h = g + s
        return mp.log(mp.expm1(h) / h) - mp.log(mp.expm1(g) / g)

    with mp.workdps(50):
        return float(mp.diff(log_mgf, 0, k))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--orders", type=int, nargs="+", default=[2, 3, 5, 8, 12, 16, 20])
    args = parser.parse_args()
    xs = [0.05, 0.5, 1.0, 1.49, 1.51, 2.0, 5.0, 20.0, 100.0]
    print("relative error of cumulant(TruncExp(2x, 0, 1), k)")
    print(f"{'k':>3} " + " ".join(f"{'x=' + str(x):>9}" for x in xs))
    for k in args.orders:
        errs = []
        for x in xs:
            ref = reference(x, k)
            errs.append(abs(cumulant(TruncExp(2 * x, 0.0, 1.0), k) - ref) / abs(ref))
        print(f"{k:>3} " + " ".join(f"{e:9.1e}" for e in errs))


if __name__ == "__main__":
    main()
