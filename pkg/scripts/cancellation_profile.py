"""How the two faces of the probe plate cancel as the sampling point approaches it.

    python3 scripts/cancellation_profile.py [--ell 3]

Each face sees a force density diverging like d^-4; the sum over both faces
tends to the net pressure with an O(d^2) residual. Also shows how the
pressure settles as the outer plate recedes.
"""
import argparse
import math

import numpy as np

from lorentz_casimir import Setup
from lorentz_casimir.pressure import ThreePlateConfig, force_density, net_pressure, numeric_cancellation_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ell", type=float, default=math.inf, help="position of the outer plate")
    args = ap.parse_args()
    d = np.geomspace(1e-3, 1e-1, 9)
    for kind in ("cc", "cp"):
        setup = Setup(kind, 1.0)
        cfg = ThreePlateConfig(setup, args.ell)
        net = net_pressure(setup, args.ell).net
        print(f"\n{kind.upper()}  net pressure {net:.12f}")
        print(f"{'d':>9} {'left face':>14} {'right face':>14} {'sum - net':>12}")
        sl, rl = force_density(cfg, "left", d)
        sr, rr = force_density(cfg, "right", d)
        for di, l, r, (_, res) in zip(d, sl + rl, sr + rr, numeric_cancellation_profile(setup, d, args.ell)):
            print(f"{di:9.2e} {l:14.6e} {r:14.6e} {res:12.3e}")
        x, y = np.log(d), np.log(np.abs([p[1] for p in numeric_cancellation_profile(setup, d, args.ell)]))
        print(f"fitted slope of |residual| vs d: {np.polyfit(x, y, 1)[0]:.4f}")

    print("\nouter plate receding (CC):")
    for gap in (0.5, 2.0, 10.0, 100.0, 1e3):
        print(f"  ell - a = {gap:7g}: P = {net_pressure(Setup('cc', 1.0), 1.0 + gap).net:.15f}")


if __name__ == "__main__":
    main()
