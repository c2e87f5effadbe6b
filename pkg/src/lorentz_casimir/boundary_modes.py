"""Cavity modes, boundary conditions and classical surface forces.

A mode is labelled by its longitudinal index ``n``, a transverse wavevector
``k_perp`` and a polarization. With ``u = z_hat x k_hat`` and
``phi = k_perp . r`` the complex mode fields (time factor exp(-i omega t))
are

    TE:  E = u sin(kz z) e^{i phi}
         B = [(k/omega) sin(kz z) z_hat + i (kz/omega) cos(kz z) k_hat] e^{i phi}
    TM:  B = u cos(kz z) e^{i phi}
         E = [-(k/omega) cos(kz z) z_hat + i (kz/omega) sin(kz z) k_hat] e^{i phi}

which solve the source-free Maxwell equations for any kz. The conducting
plate at z=0 kills tangential E and normal B for both polarizations;
kz = n pi/a repeats this at z=a, while kz = (n + 1/2) pi/a makes tangential
B and normal E vanish there instead (permeable wall).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .correlators import Setup, SetupKind
from .specfun import DomainError


class Polarization(str, enum.Enum):
    TE = "TE"
    TM = "TM"


class Species(str, enum.Enum):
    ELECTRIC = "electric"
    MAGNETIC = "magnetic"


class Plate(str, enum.Enum):
    BOTTOM = "bottom"
    TOP = "top"


@dataclass(frozen=True)
class ModeSpec:
    setup: Setup
    n: int
    k_perp: tuple[float, float]
    polarization: Polarization

    def __post_init__(self):
        object.__setattr__(self, "polarization", Polarization(self.polarization))
        object.__setattr__(self, "k_perp", (float(self.k_perp[0]), float(self.k_perp[1])))
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a non-negative integer")
        if math.hypot(*self.k_perp) == 0.0:
            raise ValueError("k_perp must be nonzero to fix the polarization basis")
        if (self.setup.kind is SetupKind.CC and self.n == 0
                and self.polarization is Polarization.TE):
            raise ValueError("the CC cavity has no TE mode with n = 0")

    @property
    def kz(self) -> float:
        shift = 0.0 if self.setup.kind is SetupKind.CC else 0.5
        return (self.n + shift) * math.pi / self.setup.a

    @property
    def k(self) -> float:
        return math.hypot(*self.k_perp)

    @property
    def omega(self) -> float:
        return math.hypot(self.k, self.kz)


def _basis(spec: ModeSpec):
    kx, ky = spec.k_perp
    k = spec.k
    k_hat = np.array([kx / k, ky / k, 0.0])
    u = np.array([-ky / k, kx / k, 0.0])
    return k_hat, u


def complex_mode(spec: ModeSpec, position) -> tuple[np.ndarray, np.ndarray]:
    """Complex amplitudes (E, B) of the mode at ``position``."""
    x, y, z = (float(c) for c in position)
    if not (0.0 <= z <= spec.setup.a):
        raise DomainError(f"z={z} outside the slab [0, {spec.setup.a}]")
    k_hat, u = _basis(spec)
    zhat = np.array([0.0, 0.0, 1.0])
    kz, k, w = spec.kz, spec.k, spec.omega
    s, c = math.sin(kz * z), math.cos(kz * z)
    wave = np.exp(1j * (spec.k_perp[0] * x + spec.k_perp[1] * y))
    if spec.polarization is Polarization.TE:
        E = u * s
        B = (k / w) * s * zhat + 1j * (kz / w) * c * k_hat
    else:
        B = u * c
        E = -(k / w) * c * zhat + 1j * (kz / w) * s * k_hat
    return E * wave, B * wave


def mode_field(spec: ModeSpec, position, phase: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Real instantaneous fields Re[(E, B) exp(-i phase)], phase = omega t + const."""
    E, B = complex_mode(spec, position)
    rot = np.exp(-1j * phase)
    return (E * rot).real, (B * rot).real


def plate_type(kind: SetupKind, plate: Plate) -> str:
    if Plate(plate) is Plate.BOTTOM or SetupKind.parse(kind) is SetupKind.CC:
        return "conductor"
    return "permeable"


def outward_normal(plate: Plate) -> np.ndarray:
    """Normal pointing from the plate into the cavity."""
    return np.array([0.0, 0.0, 1.0 if Plate(plate) is Plate.BOTTOM else -1.0])


def _sample_points(spec: ModeSpec, count: int):
    # deterministic transverse positions and phases spanning one wavelength
    lam = 2 * math.pi / spec.k
    for i in range(count):
        t = (i + 0.5) / count
        yield lam * t, lam * ((0.618034 * (i + 1)) % 1.0), 2 * math.pi * ((0.414214 * (i + 1)) % 1.0)


def check_bc(spec: ModeSpec, plate: Plate, sample_count: int = 16, against: SetupKind | str | None = None) -> float:
    """Largest magnitude of the field components that must vanish on ``plate``.

    The conditions are taken from ``against`` (default: the mode's own setup),
    which lets a mode be tested against the other cavity's boundary.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    kind = spec.setup.kind if against is None else SetupKind.parse(against)
    z = 0.0 if Plate(plate) is Plate.BOTTOM else spec.setup.a
    conductor = plate_type(kind, plate) == "conductor"
    worst = 0.0
    for x, y, phase in _sample_points(spec, sample_count):
        E, B = mode_field(spec, (x, y, z), phase)
        if conductor:
            bad = (E[0], E[1], B[2])
        else:
            bad = (B[0], B[1], E[2])
        worst = max(worst, *(abs(v) for v in bad))
    return worst


@dataclass(frozen=True)
class SurfaceDensities:
    sigma: float
    K: np.ndarray
    species: Species


def surface_densities(E, B, normal, species: Species | str) -> SurfaceDensities:
    """Surface charge and current that terminate the fields on a plate face (c = 1).

    electric:  n.E = 4 pi sigma_e,   n x B =  4 pi K_e
    magnetic:  n.B = 4 pi sigma_m,   n x E = -4 pi K_m
    """
    E, B, n = (np.asarray(v, dtype=float) for v in (E, B, normal))
    species = Species(species)
    if species is Species.ELECTRIC:
        sigma = float(n @ E) / (4 * math.pi)
        K = np.cross(n, B) / (4 * math.pi)
    else:
        sigma = float(n @ B) / (4 * math.pi)
        K = -np.cross(n, E) / (4 * math.pi)
    return SurfaceDensities(sigma, K, species)


def lorentz_force_density(densities: SurfaceDensities, E, B) -> np.ndarray:
    """Force per area on the surface sources; the 1/2 averages the two faces."""
    E, B = np.asarray(E, dtype=float), np.asarray(B, dtype=float)
    sigma, K = densities.sigma, densities.K
    if densities.species is Species.ELECTRIC:
        return 0.5 * sigma * E + 0.5 * np.cross(K, B)
    return 0.5 * sigma * B - 0.5 * np.cross(K, E)


def plate_force(spec: ModeSpec, plate: Plate, species: Species | str, x: float = 0.0, y: float = 0.0,
                phase: float = 0.0) -> np.ndarray:
    """Classical surface force density of one mode on the cavity face of a plate."""
    z = 0.0 if Plate(plate) is Plate.BOTTOM else spec.setup.a
    E, B = mode_field(spec, (x, y, z), phase)
    dens = surface_densities(E, B, outward_normal(plate), species)
    return lorentz_force_density(dens, E, B)


def symmetrized_EB(specs, position) -> np.ndarray:
    """Sum over modes of Re(E_i conj(B_j)), the symmetrized <E_i B_j> content.

    Computed from the real fields at two quadrature phases, since
    Re(a) Re(b) + Im(a) Im(b) = Re(a conj(b)).
    """
    total = np.zeros((3, 3))
    for spec in specs:
        for phase in (0.0, math.pi / 2):
            E, B = mode_field(spec, position, phase)
            total += np.outer(E, B)
    return total


def divergence(field, spec: ModeSpec, position, phase: float = 0.0, step: float | None = None) -> float:
    """Central-difference divergence of the E (``field='E'``) or B mode field.

    The default step shrinks with the mode frequency so the O((omega h)^2)
    truncation stays near 1e-9 for any mode.
    """
    if step is None:
        step = 1e-4 / max(1.0, spec.omega)
    idx = 0 if field == "E" else 1
    p = np.asarray(position, dtype=float)
    total = 0.0
    for axis in range(3):
        dp = np.zeros(3)
        dp[axis] = step
        hi = mode_field(spec, p + dp, phase)[idx][axis]
        lo = mode_field(spec, p - dp, phase)[idx][axis]
        total += (hi - lo) / (2 * step)
    return total
