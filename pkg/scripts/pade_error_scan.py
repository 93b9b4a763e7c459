"""Relative error of the tangent-Pade inverse Langevin approximation.

    python scripts/pade_error_scan.py [--points 10000] [--ymax 0.999]
"""

import argparse

import numpy as np

from langexp.langevin import PADE_BD, PADE_BN, inv_langevin, inv_langevin_pade


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=10_000)
    parser.add_argument("--ymax", type=float, default=0.999)
    args = parser.parse_args()

    ys = np.linspace(0.0, args.ymax, args.points)[1:]
    exact = np.array([inv_langevin(y) for y in ys])
    approx = np.array([inv_langevin_pade(y) for y in ys])
    rel = (approx - exact) / exact

    print(f"b_d = {PADE_BD:.15f}   b_n = {PADE_BN:.15f}")
    i = int(np.argmax(np.abs(rel)))
    print(f"max |rel err| = {abs(rel[i]):.6f} at y = {ys[i]:.4f} (x = {exact[i]:.4f})")
    print(f"{'y':>8} {'L^-1(y)':>14} {'pade':>14} {'rel err':>10}")
    for y in (0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, args.ymax):
        e, a = inv_langevin(y), inv_langevin_pade(y)
        print(f"{y:8.3f} {e:14.8f} {a:14.8f} {(a - e) / e:10.2e}")


if __name__ == "__main__":
    main()
