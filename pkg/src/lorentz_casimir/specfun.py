r"""Position functions of the parallel-plate vacuum correlators.

Both functions are third derivatives of elementary trigonometric functions,

.. math::
    F(\xi) = -\frac{1}{8}\frac{d^3}{d\xi^3}\frac{\cot\xi}{2}
           = \frac{3}{8}\csc^4\xi - \frac{1}{4}\csc^2\xi,

    G(\xi) = -\frac{1}{8}\frac{d^3}{d\xi^3}\frac{1}{2\sin\xi}
           = \frac{3}{8}\csc^3\xi\cot\xi - \frac{1}{16}\csc\xi\cot\xi,

with :math:`\xi = \pi z/a`. Summing the partial-fraction expansions of
``cot`` and ``csc`` gives the pole forms

.. math::
    F(\xi) = \frac{3}{8}\sum_{k\in\mathbb{Z}} (\xi - k\pi)^{-4},\qquad
    G(\xi) = \frac{3}{8}\sum_{k\in\mathbb{Z}} (-1)^k (\xi - k\pi)^{-4},

which are used to evaluate the regular remainder left after subtracting
the plate singularity without cancellation.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import zeta

GUARD_BAND = 1e-3

SINGULAR_COEFF = Fraction(3, 8)
F_CONSTANT = Fraction(1, 120)
G_CONSTANT = Fraction(7, 960)


class DomainError(ValueError):
    """Argument outside the open interval (0, pi)."""


class GuardBandWarning(UserWarning):
    """Evaluation fell back to the two-term endpoint expansion."""


@dataclass(frozen=True)
class SeriesExpansion:
    """``singular_coeff * (xi - center)**-4 + constant_term + O((xi - center)**error_order)``."""

    center: float
    singular_coeff: Fraction
    constant_term: Fraction
    error_order: int = 2

    def __post_init__(self):
        if self.center not in (0.0, math.pi):
            raise DomainError(f"expansion center must be 0 or pi, got {self.center!r}")

    def __call__(self, xi):
        s = np.asarray(xi, dtype=float) - self.center
        out = float(self.singular_coeff) * s**-4 + float(self.constant_term)
        return out if out.ndim else float(out)


def _check_center(center) -> float:
    center = float(center)
    if center == 0.0:
        return 0.0
    if center == math.pi:
        return math.pi
    raise DomainError(f"expansion center must be 0 or pi, got {center!r}")


def _check_interior(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    if not np.all(np.isfinite(xi)) or np.any(xi <= 0.0) or np.any(xi >= math.pi):
        raise DomainError("xi must lie strictly inside (0, pi)")
    return xi


def _scalar_or_array(x: np.ndarray):
    return float(x) if x.ndim == 0 else x


def F_closed(xi):
    """Trigonometric closed form of F with no guard-band handling."""
    csc2 = 1.0 / np.sin(xi) ** 2
    return 0.375 * csc2 * csc2 - 0.25 * csc2


def G_closed(xi):
    """Trigonometric closed form of G with no guard-band handling."""
    s = np.sin(xi)
    csc_cot = np.cos(xi) / (s * s)
    return (0.375 / (s * s) - 0.0625) * csc_cot


def expand_F(center) -> SeriesExpansion:
    """F has the same singular coefficient and constant at both plates."""
    c = _check_center(center)
    return SeriesExpansion(c, SINGULAR_COEFF, F_CONSTANT)


def expand_G(center) -> SeriesExpansion:
    """Endpoint expansion of G; the signs flip between the two plates."""
    c = _check_center(center)
    if c == 0.0:
        return SeriesExpansion(c, SINGULAR_COEFF, -G_CONSTANT)
    return SeriesExpansion(c, -SINGULAR_COEFF, G_CONSTANT)


def _guarded(closed, expand, xi):
    xi = _check_interior(xi)
    out = np.array(closed(xi), dtype=float)
    near0 = xi < GUARD_BAND
    nearpi = (math.pi - xi) < GUARD_BAND
    if np.any(near0) or np.any(nearpi):
        warnings.warn(
            f"xi within {GUARD_BAND} of a plate; using endpoint expansion",
            GuardBandWarning,
            stacklevel=3,
        )
        out = np.where(near0, expand(0.0)(np.where(near0, xi, 1.0)), out)
        out = np.where(nearpi, expand(math.pi)(np.where(nearpi, xi, 1.0)), out)
    return _scalar_or_array(out)


def eval_F(xi):
    """F(xi) for 0 < xi < pi; accepts scalars or arrays.

    Raises DomainError at or beyond the plates and warns with
    GuardBandWarning when the endpoint expansion is used instead of the
    closed form.
    """
    return _guarded(F_closed, expand_F, xi)


def eval_G(xi):
    """G(xi) for 0 < xi < pi, same conventions as :func:`eval_F`."""
    return _guarded(G_closed, expand_G, xi)


# Pole-subtracted remainders. With t = xi/pi in (-1, 1):
#   sum_{k != 0} (t - k)^-4          = zeta(4, 1 - t) + zeta(4, 1 + t)
#   sum_{k != 0} (-1)^k (t - k)^-4   = alt(1 - t) + alt(1 + t),
# alt(q) = sum_{m >= 0} (-1)^(m+1) (m + q)^-4 = 2^-4 [zeta(4, (q+1)/2) - zeta(4, q/2)].

def _alt(q):
    return (zeta(4, 0.5 * q + 0.5) - zeta(4, 0.5 * q)) / 16.0


def _remainder_F0(u):
    t = u / math.pi
    return 0.375 * (zeta(4, 1.0 - t) + zeta(4, 1.0 + t)) / math.pi**4


def _remainder_G0(u):
    t = u / math.pi
    return 0.375 * (_alt(1.0 - t) + _alt(1.0 + t)) / math.pi**4


def remainder_F(xi, center):
    r"""``F(xi) - 3/8 (xi - center)**-4``, free of cancellation near the plate.

    Valid for ``|xi - center| < pi`` (the pole form has no other singularity
    there) and tends to 1/120 at the center. F has period pi.
    """
    c = _check_center(center)
    u = np.asarray(xi, dtype=float) - c
    if np.any(np.abs(u) >= math.pi):
        raise DomainError("remainder requires |xi - center| < pi")
    return _scalar_or_array(np.asarray(_remainder_F0(u)))


def remainder_G(xi, center):
    """``G(xi) - expand_G(center).singular_coeff * (xi - center)**-4``.

    G is antiperiodic with period pi, so the remainder about pi is minus the
    remainder about 0 evaluated at ``xi - pi``.
    """
    c = _check_center(center)
    u = np.asarray(xi, dtype=float) - c
    if np.any(np.abs(u) >= math.pi):
        raise DomainError("remainder requires |xi - center| < pi")
    r = _remainder_G0(u)
    return _scalar_or_array(np.asarray(r if c == 0.0 else -r))
