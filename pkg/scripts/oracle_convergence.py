"""Abel-regulated mode sums against the closed forms.

    python3 scripts/oracle_convergence.py

Shows the raw regulated sums at each lambda, the extrapolated limit and the
bias slope, then the endpoint constants recovered by both routes.
"""
import math

import numpy as np

from lorentz_casimir import specfun as sf
from lorentz_casimir import spectral_oracle as so


def main():
    params = so.AbelSumParams()
    for kind, closed in (("F", sf.eval_F), ("G", sf.eval_G)):
        xi = 1.0
        raw = so.abel_partial_sums(kind, xi, params)
        est = (so.abel_F if kind == "F" else so.abel_G)(xi, params)
        print(f"{kind}({xi}) closed {closed(xi):.15f}  extrapolated {est.value:.15f}  (error est {est.error:.1e})")
        for lam, s in zip(params.lambda_grid, raw):
            print(f"   lambda {lam:<7g} sum {s:.12f}  bias {s - est.value:+.3e}")
        bias = np.abs(np.array(raw) - est.value)
        print(f"   bias slope in lambda: {np.polyfit(np.log(params.lambda_grid), np.log(bias), 1)[0]:.3f}")

    grid = np.linspace(0.3, math.pi - 0.3, 50)
    for kind, fn, closed in (("F", so.abel_F, sf.eval_F), ("G", so.abel_G, sf.eval_G)):
        err = max(abs(fn(x).value - closed(x)) for x in grid)
        print(f"max |abel_{kind} - eval_{kind}| on 50 points: {err:.2e}")

    print("\nendpoint constants (distance route / abel route / exact):")
    exact = {"F-at-0": 1 / 120, "F-at-pi": 1 / 120, "G-at-0": -7 / 960, "G-at-pi": 7 / 960}
    for kind, value in exact.items():
        d = so.extract_constant(kind).value
        a = so.extract_constant(kind, method="abel").value
        print(f"  {kind:8s} {d:.15f}  {a:.15f}  {value:.15f}")


if __name__ == "__main__":
    main()
