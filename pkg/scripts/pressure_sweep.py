"""Net pressure of both setups over a range of separations.

    python3 scripts/pressure_sweep.py --a-min 0.5 --a-max 10 --samples 12

Prints a table and checks the a^-4 law and the -7/8 ratio at every point.
"""
import argparse
import math

import numpy as np

from lorentz_casimir import Setup, net_pressure


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a-min", type=float, default=0.5)
    ap.add_argument("--a-max", type=float, default=10.0)
    ap.add_argument("--samples", type=int, default=12)
    args = ap.parse_args()

    print(f"{'a':>10} {'P_CC':>14} {'P_CP':>14} {'ratio':>10} {'P_CC a^4':>14}")
    worst_ratio = worst_law = 0.0
    for a in np.geomspace(args.a_min, args.a_max, args.samples):
        cc = net_pressure(Setup("cc", a)).net
        cp = net_pressure(Setup("cp", a)).net
        worst_ratio = max(worst_ratio, abs(cp / cc + 7 / 8))
        worst_law = max(worst_law, abs(cc * a**4 / (-math.pi**2 / 240) - 1))
        print(f"{a:10.4g} {cc:14.6e} {cp:14.6e} {cp / cc:10.6f} {cc * a**4:14.10f}")
    print(f"max |ratio + 7/8| = {worst_ratio:.1e}")
    print(f"max relative deviation from -pi^2/(240 a^4) = {worst_law:.1e}")


if __name__ == "__main__":
    main()
