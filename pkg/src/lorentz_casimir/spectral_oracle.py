"""Independent numerical routes to F, G and their endpoint constants.

Nothing here imports the closed forms in :mod:`lorentz_casimir.specfun`;
the two modules are compared against each other in the test suite.

Term-wise differentiation of the Abel-summed Fourier series

    cot(xi)/2       = sum_{n>=1} sin(2 n xi)
    1/(2 sin(xi))   = sum_{k>=0} sin((2k+1) xi)

gives the cosine series used by :func:`abel_F` and :func:`abel_G`:

    F(xi) = sum_{n>=1} n^3 cos(2 n xi)
    G(xi) = 1/8 sum_{k>=0} (2k+1)^3 cos((2k+1) xi)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np


class OracleError(ArithmeticError):
    """An extrapolation or difference tableau failed to converge."""


class StepSizeError(OracleError):
    pass


class NonConvergenceError(OracleError):
    pass


@dataclass(frozen=True)
class AbelSumParams:
    """Regulator grid for the Abel-summed cosine series.

    The lambda-bias of the regulated sum is a series in lambda**2 whose
    radius of convergence is the distance min(xi, pi - xi) to the nearest
    plate (G) or twice that (F), so the grid has to reach well below 0.3 for
    the oracle to hold 1e-6 over [0.3, pi - 0.3]. ``n_max * min(lambda)``
    of 30 is the hard floor; with n**3 weights the default keeps it at 50.
    """

    lambda_grid: tuple[float, ...] = (0.08, 0.04, 0.02, 0.01, 0.005)
    n_max: int = 10_000
    extrapolation_order: int = 4

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lambda_grid)
        object.__setattr__(self, "lambda_grid", lam)
        if not lam or any(v <= 0 for v in lam):
            raise ValueError("lambda_grid must be non-empty and positive")
        if any(b >= a for a, b in zip(lam, lam[1:])):
            raise ValueError("lambda_grid must be strictly decreasing")
        if self.n_max * min(lam) < 30:
            raise ValueError("n_max * min(lambda_grid) must be >= 30")
        if not 0 <= self.extrapolation_order < len(lam):
            raise ValueError("extrapolation_order must be below the grid size")


@dataclass(frozen=True)
class Estimate:
    """An extrapolated value with the spread of its last two tableau entries."""

    value: float
    error: float
    tableau: list = field(default_factory=list, compare=False, repr=False)

    def __float__(self):
        return self.value


def richardson(values, steps, power: int = 2, order: int | None = None) -> Estimate:
    """Neville extrapolation to ``step -> 0`` assuming a series in ``step**power``.

    ``values[i]`` is the estimate at ``steps[i]``. ``order`` limits the
    polynomial degree in ``step**power`` (default: use every point).
    """
    x = np.asarray(steps, dtype=float) ** power
    y = [float(v) for v in values]
    n = len(y)
    if order is None:
        order = n - 1
    # tableau[j][i]: degree-j interpolant through points i-j..i, evaluated at 0
    tableau = [y]
    for j in range(1, order + 1):
        prev = tableau[-1]
        row = [None] * n
        for i in range(j, n):
            row[i] = (x[i - j] * prev[i] - x[i] * prev[i - 1]) / (x[i - j] - x[i])
        tableau.append(row)
    best = tableau[order][n - 1]
    if order == 0:
        err = abs(y[-1] - y[-2]) if n > 1 else math.inf
    else:
        err = abs(best - tableau[order - 1][n - 1])
    return Estimate(best, err, tableau)


def _central_third(f, xi, h):
    return (f(xi + 2 * h) - 2 * f(xi + h) + 2 * f(xi - h) - f(xi - 2 * h)) / (2 * h**3)


def fd_third_derivative(f: Callable[[float], float], xi: float, h: float = 1e-2, levels: int = 3) -> Estimate:
    """Third derivative of ``f`` at ``xi`` from central differences.

    The five-point stencil has an error series in h**2. It is evaluated at
    steps 2h, h, h/2, ... (``levels + 1`` of them; the stencil reaches
    xi +- 4h) and each Richardson level removes one power of h**2, so the
    default three levels leave an O(h**8) truncation error.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    steps = [2 * h / 2**k for k in range(levels + 1)]
    values = [_central_third(f, xi, s) for s in steps]
    est = richardson(values, steps)
    scale = max(abs(f(xi + d)) for d in (-2 * h, 0.0, 2 * h))
    noise = 1e3 * np.finfo(float).eps * max(scale, 1.0) / steps[-1] ** 3
    # smooth input: raw differences shrink ~4x per halving of the step
    raw = [abs(b - a) for a, b in zip(values, values[1:])]
    if len(raw) >= 2 and raw[-1] > raw[0] and raw[-1] > noise:
        raise StepSizeError(f"difference quotients grow as the step shrinks at xi={xi}")
    if levels >= 2:
        prev_err = abs(est.tableau[levels - 1][levels] - est.tableau[levels - 2][levels])
        if est.error > prev_err and est.error > noise:
            raise StepSizeError(
                f"Richardson tableau diverges at xi={xi} (err {est.error:.3g} > {prev_err:.3g})"
            )
    return est


_PHASE_BITS = 128


def _cos_multiples(theta, multipliers):
    """cos(m * theta) for integer m, with m * theta reduced mod 2 pi exactly.

    Forming m * theta in floating point leaves an absolute phase error of
    order eps * m * theta, which the m**3 weights amplify far beyond the
    oracle tolerance. Instead theta / (2 pi) is held as a 128-bit binary
    fraction and the reduction is done in integer arithmetic.
    """
    with mpmath.workdps(60):
        turns = mpmath.mpf(theta) / (2 * mpmath.pi)
        u = int(mpmath.floor(turns * 2**_PHASE_BITS))
    bits = _PHASE_BITS
    mask = (1 << bits) - 1
    quarter = 1 << (bits - 2)
    quads = np.empty(len(multipliers), dtype=np.int64)
    resid = np.empty(len(multipliers), dtype=float)
    for i, m in enumerate(multipliers):
        p = (int(m) * u) & mask
        q = ((p + quarter // 2) >> (bits - 2)) & 3
        r = ((p - q * quarter + (1 << (bits - 1))) & mask) - (1 << (bits - 1))
        quads[i] = q
        resid[i] = r >> (bits - 60)
    # angle within [-pi/4, pi/4) of the nearest quarter turn
    x = 2 * math.pi * (resid * 2.0**-60)
    c, s = np.cos(x), np.sin(x)
    return np.choose(quads, [c, -s, -c, s])


def _exp_damping(index, lam):
    """exp(-index * lam) without the rounding of the product index * lam."""
    # 26-bit head of lam: index * head is exact for index < 2**27
    head = math.ldexp(math.floor(math.ldexp(lam, 26 - math.frexp(lam)[1])), math.frexp(lam)[1] - 26)
    tail = lam - head
    index = np.asarray(index, dtype=float)
    return np.exp(-index * head) * np.exp(-index * tail)


def _abel_cosine_sum(xi, params, odd_only):
    if odd_only:
        m = np.arange(1, params.n_max + 1, 2)
        weight, cosines, damp = m.astype(float) ** 3 / 8.0, _cos_multiples(xi, m), m
    else:
        n = np.arange(1, params.n_max + 1)
        weight, cosines, damp = n.astype(float) ** 3, _cos_multiples(2.0 * xi, n), n
    oscill = weight * cosines
    return [math.fsum(oscill * _exp_damping(damp, lam)) for lam in params.lambda_grid]


def _abel_limit(xi, params, odd_only):
    if not 0.0 < xi < math.pi:
        raise ValueError("xi must lie strictly inside (0, pi)")
    partial = _abel_cosine_sum(xi, params, odd_only)
    est = richardson(partial, params.lambda_grid, power=2, order=params.extrapolation_order)
    if params.extrapolation_order >= 2:
        # successive diagonal corrections must shrink
        n = len(partial)
        diag = [est.tableau[j][n - 1] for j in range(params.extrapolation_order + 1)]
        steps = [abs(b - a) for a, b in zip(diag, diag[1:])]
        floor = 1e-9 * max(1.0, abs(est.value))
        if steps[-1] > steps[0] and steps[-1] > floor:
            raise NonConvergenceError(f"Abel extrapolation residuals grow at xi={xi}")
    return est


def abel_F(xi: float, params: AbelSumParams | None = None) -> Estimate:
    """F(xi) as the lambda -> 0 limit of sum n^3 cos(2 n xi) exp(-n lambda)."""
    return _abel_limit(float(xi), params or AbelSumParams(), odd_only=False)


def abel_G(xi: float, params: AbelSumParams | None = None) -> Estimate:
    """G(xi) as the lambda -> 0 limit of 1/8 sum (2k+1)^3 cos((2k+1) xi) exp(-(2k+1) lambda)."""
    return _abel_limit(float(xi), params or AbelSumParams(), odd_only=True)


def abel_partial_sums(kind: str, xi: float, params: AbelSumParams | None = None) -> list[float]:
    """Regulated sums at each lambda of the grid, before extrapolation."""
    return _abel_cosine_sum(float(xi), params or AbelSumParams(), odd_only=(kind == "G"))


# --- endpoint constants ------------------------------------------------------

# On the plate the lambda-bias is analytic out to |lambda| = 2 pi, so a coarse
# grid converges fast and keeps the 6/lambda^4 subtraction well conditioned.
ENDPOINT_PARAMS = AbelSumParams((0.4, 0.2, 0.1, 0.05, 0.025), n_max=4000, extrapolation_order=4)

KINDS = ("F-at-0", "F-at-pi", "G-at-0", "G-at-pi")

# singular coefficient of (xi - center)^-4 for each kind
_SINGULAR = {"F-at-0": 0.375, "F-at-pi": 0.375, "G-at-0": 0.375, "G-at-pi": -0.375}


def _defining_function(kind):
    if kind.startswith("F"):
        return lambda x: mpmath.cot(x) / 2
    return lambda x: 1 / (2 * mpmath.sin(x))


def _distance_constant(kind, s_grid, dps):
    g = _defining_function(kind)
    center = mpmath.mpf(0) if kind.endswith("0") else mpmath.pi
    sing = mpmath.mpf(_SINGULAR[kind])
    vals = []
    with mpmath.workdps(dps):
        for s in s_grid:
            s = mpmath.mpf(s)
            # approach from inside the cavity
            x = center + s if kind.endswith("0") else center - s
            third = mpmath.diff(g, x, 3)
            vals.append(-third / 8 - sing * s**-4)
    return [float(v) for v in vals]


def _abel_constant(kind, params):
    vals = []
    for lam in params.lambda_grid:
        if kind.startswith("G"):
            m = np.arange(1, params.n_max + 1, 2, dtype=float)
            # 1/8 sum_odd m^3 e^{-m lam} = 3/(8 lam^4) + finite; cos(m pi) = -1
            finite = math.fsum(m**3 * np.exp(-m * lam)) / 8.0 - 3.0 / (8.0 * lam**4)
            vals.append(finite if kind.endswith("0") else -finite)
        else:
            n = np.arange(1, params.n_max + 1, dtype=float)
            vals.append(math.fsum(n**3 * np.exp(-n * lam)) - 6.0 / lam**4)
    return vals


def extract_constant(kind: str, method: str = "distance", *, s0: float = 0.1, levels: int = 6,
                     params: AbelSumParams | None = None, dps: int = 40) -> Estimate:
    """Constant term of F or G at a plate, with the singular piece removed.

    ``method="distance"`` evaluates the defining third derivative in high
    precision at distances ``s0 * 2**-k`` from the plate, subtracts the
    known ``s**-4`` term and extrapolates in ``s**2``.

    ``method="abel"`` sets xi on the plate and uses the regulator instead:
    the Abel sum equals the function at the imaginary distance i*lambda/2,
    so the subtracted pole reads 6/lambda^4 (F) and 3/(8 lambda^4) (G).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if method == "distance":
        steps = [s0 / 2**k for k in range(levels)]
        vals = _distance_constant(kind, steps, dps)
    elif method == "abel":
        params = params or ENDPOINT_PARAMS
        steps = list(params.lambda_grid)
        vals = _abel_constant(kind, params)
    else:
        raise ValueError("method must be 'distance' or 'abel'")
    est = richardson(vals, steps, power=2)
    diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    # O(s^2) residuals shrink by ~4 per halving
    if any(d2 > d1 for d1, d2 in zip(diffs, diffs[1:]) if d1 > 1e-12):
        raise NonConvergenceError(f"residuals for {kind} are not decreasing like s^2")
    return est
