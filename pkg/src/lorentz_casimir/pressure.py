"""Casimir pressure from the vacuum Lorentz force on the plate at z = a.

On the face of a plate with outward normal n the averaged force per area is

    electric sources:  f = +(1/8 pi) <E^2 - B^2> n
    magnetic sources:  f = +(1/8 pi) <B^2 - E^2> n

A conductor carries electric sources, a permeable wall magnetic ones. Each
face sees a correlator that diverges like (z - a)^-4; the coefficients are
kept as exact rationals times 1/pi^2 so their cancellation between the two
faces is exact. The outer face of the probe plate is bounded by a third plate
at z = ell (like the probe), giving a slab of width ell - a whose
correlators are the conductor-conductor ones, E and B swapped for two
permeable walls.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .correlators import Setup, SetupKind
from .specfun import expand_F, expand_G, remainder_F, remainder_G


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class ThreePlateConfig:
    setup: Setup
    ell: float = math.inf

    def __post_init__(self):
        if not self.ell > self.setup.a:
            raise ValueError(f"third plate must sit beyond the probe plate: ell={self.ell} <= a={self.setup.a}")

    @property
    def third_plate_kind(self) -> str:
        return "conductor" if self.setup.kind is SetupKind.CC else "permeable"


@dataclass(frozen=True)
class SideForce:
    """``divergent / pi^2 * (z - a)^-4 + finite``."""

    divergent: Fraction
    finite: float

    @property
    def divergent_coeff(self) -> float:
        return float(self.divergent) / math.pi**2


@dataclass(frozen=True)
class ForceResult:
    left: SideForce
    right: SideForce
    net: float

    @property
    def divergent_left(self) -> float:
        return self.left.divergent_coeff

    @property
    def divergent_right(self) -> float:
        return self.right.divergent_coeff

    @property
    def divergence_cancels(self) -> bool:
        return self.left.divergent + self.right.divergent == 0

    @property
    def verdict(self) -> str:
        return "attractive" if self.net < 0 else "repulsive" if self.net > 0 else "null"


@dataclass(frozen=True)
class _Region:
    """One slab seen from the probe plate.

    ``face_sign`` combines the outward normal with the source species:
    f_z = face_sign * (1/8 pi) <E^2 - B^2>. ``dual`` marks a permeable pair,
    whose <E^2 - B^2> is minus the conductor one. The endpoint at the probe
    plate is xi = pi on the left face and xi = 0 on the right face.
    """

    width: float
    function: str  # "F" or "G"
    center: float
    face_sign: int
    dual: bool = False

    @property
    def weight(self) -> int:
        return -self.face_sign if self.dual else self.face_sign

    def expansion(self):
        return (expand_F if self.function == "F" else expand_G)(self.center)

    def remainder(self, xi):
        return (remainder_F if self.function == "F" else remainder_G)(xi, self.center)


def _regions(config: ThreePlateConfig, side: Side) -> _Region:
    setup = config.setup
    magnetic = setup.kind is SetupKind.CP
    if Side(side) is Side.LEFT:
        # outward normal of the left face is -z
        face = +1 if magnetic else -1
        return _Region(setup.a, "F" if setup.kind is SetupKind.CC else "G", math.pi, face)
    # right face: normal +z; slab bounded by two like plates
    face = -1 if magnetic else +1
    return _Region(config.ell - setup.a, "F", 0.0, face, dual=magnetic)


def _stress_scale(width: float) -> float:
    # (1/8 pi) (pi/w)^4 (4/pi) = pi^2 / (2 w^4)
    return math.pi**2 / (2.0 * width**4)


def side_force(config: ThreePlateConfig, side: Side | str) -> SideForce:
    """Divergent coefficient and finite part of the force on one face of the probe plate."""
    region = _regions(config, Side(side))
    exp = region.expansion()
    # pi^2/(2 w^4) * c (w/pi)^4 (z-a)^-4 = c / (2 pi^2) (z-a)^-4
    divergent = region.weight * exp.singular_coeff / 2
    if math.isinf(region.width):
        finite = 0.0
    else:
        finite = region.weight * _stress_scale(region.width) * float(exp.constant_term)
    return SideForce(divergent, finite)


def net_pressure(setup: Setup, ell: float = math.inf, method: str = "closed") -> ForceResult:
    """Net normal force per area on the plate at z = a (negative: attraction).

    ``method="oracle"`` takes the endpoint constants from the regulated mode
    sums in :mod:`lorentz_casimir.spectral_oracle` instead of the closed
    expansions.
    """
    config = ThreePlateConfig(setup, ell)
    left, right = side_force(config, Side.LEFT), side_force(config, Side.RIGHT)
    if method == "oracle":
        left, right = _oracle_side(config, Side.LEFT, left), _oracle_side(config, Side.RIGHT, right)
    elif method != "closed":
        raise ValueError("method must be 'closed' or 'oracle'")
    if left.divergent + right.divergent != 0:
        raise ArithmeticError("divergent surface terms failed to cancel")
    return ForceResult(left, right, left.finite + right.finite)


def _oracle_side(config, side, closed: SideForce) -> SideForce:
    from .spectral_oracle import extract_constant

    region = _regions(config, side)
    if math.isinf(region.width):
        return closed
    kind = f"{region.function}-at-{'0' if region.center == 0.0 else 'pi'}"
    const = extract_constant(kind, method="abel").value
    return SideForce(closed.divergent, region.weight * _stress_scale(region.width) * const)


def force_density(config: ThreePlateConfig, side: Side | str, d):
    """Full (unexpanded) force per area on one face at distance ``d`` from the probe plate.

    Returned as ``(divergent_part, regular_part)`` so that the sum over faces
    can cancel the singular pieces exactly; the regular part is the exact
    closed form with its pole subtracted.
    """
    region = _regions(config, Side(side))
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0) or np.any(d >= region.width):
        raise ValueError("distance must lie inside the slab")
    singular = float(region.weight * region.expansion().singular_coeff / 2) / math.pi**2 * d**-4
    if math.isinf(region.width):
        regular = np.zeros_like(d)
    else:
        u = math.pi * d / region.width
        xi = region.center - u if region.center else u
        regular = region.weight * _stress_scale(region.width) * np.asarray(region.remainder(xi))
    return singular, regular


def numeric_cancellation_profile(setup: Setup, distances, ell: float = math.inf):
    """``[(d, residual)]`` with residual = (left + right force at d) - net pressure.

    The (z - a)^-4 parts of the two faces cancel identically; what remains is
    the O(d^2) tail of the regular parts, evaluated from the full closed
    forms rather than the two-term expansions.
    """
    config = ThreePlateConfig(setup, ell)
    net = net_pressure(setup, ell).net
    d = np.asarray(distances, dtype=float)
    sl, rl = force_density(config, Side.LEFT, d)
    sr, rr = force_density(config, Side.RIGHT, d)
    # sl + sr is identically zero: coefficients are exact negatives of each other
    residual = (rl + rr) - net
    return [(float(x), float(r)) for x, r in zip(np.atleast_1d(d), np.atleast_1d(residual))]


def energy_per_area(setup: Setup) -> float:
    """E(a) = integral_a^inf P(s) ds with E(inf) = 0, so P = -dE/da.

    The pressure is C/a^4, hence E = C/(3 a^3) = P(a) a / 3.
    """
    return net_pressure(setup).net * setup.a / 3.0


def difference_identity(a: float) -> tuple[float, float]:
    """Relative residuals of the CP = CC(2a) - CC(a) identity for pressure and energy.

    Differentiating E_CP(a) = E_CC(2a) - E_CC(a) in a puts the weight 2 on
    the wide cavity: P_CP(a) = 2 P_CC(2a) - P_CC(a).
    """
    p_cp = net_pressure(Setup(SetupKind.CP, a)).net
    p_cc1 = net_pressure(Setup(SetupKind.CC, a)).net
    p_cc2 = net_pressure(Setup(SetupKind.CC, 2 * a)).net
    e_cp = energy_per_area(Setup(SetupKind.CP, a))
    e_cc1 = energy_per_area(Setup(SetupKind.CC, a))
    e_cc2 = energy_per_area(Setup(SetupKind.CC, 2 * a))
    pressure_residual = (p_cp - (2 * p_cc2 - p_cc1)) / abs(p_cp)
    energy_residual = (e_cp - (e_cc2 - e_cc1)) / abs(e_cp)
    return pressure_residual, energy_residual
