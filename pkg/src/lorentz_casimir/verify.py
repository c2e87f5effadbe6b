"""Named property checks grouped into suites for ``lorentz-casimir verify``.

Every check reports a measured error, the tolerance it must stay within and
the resulting flag. The report layout is fixed by
``schemas/verify_report.schema.json``.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass
from importlib import resources

import numpy as np

from . import boundary_modes as bm
from . import pressure as pr
from . import specfun as sf
from . import spectral_oracle as so
from .correlators import Setup, SetupKind

SUITES = ("specfun", "oracle", "modes", "pressure", "identity")


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool

    @classmethod
    def within(cls, name, value, tolerance):
        value = float(value)
        return cls(name, value, float(tolerance), bool(value <= tolerance))


def loglog_slope(x, y) -> float:
    x, y = np.log(np.abs(np.asarray(x))), np.log(np.abs(np.asarray(y)))
    return float(np.polyfit(x, y, 1)[0])


def specfun_checks():
    checks = []
    grid = np.linspace(0.3, math.pi - 0.3, 1000)
    fd_F = np.array([-so.fd_third_derivative(lambda x: 0.5 / math.tan(x), x).value / 8 for x in grid])
    fd_G = np.array([-so.fd_third_derivative(lambda x: 0.5 / math.sin(x), x).value / 8 for x in grid])
    checks.append(Check.within("F_vs_finite_difference", np.max(np.abs(sf.eval_F(grid) - fd_F)), 1e-8))
    checks.append(Check.within("G_vs_finite_difference", np.max(np.abs(sf.eval_G(grid) - fd_G)), 1e-8))
    refl = np.linspace(0.01, math.pi / 2, 500)
    F, G = sf.eval_F(refl), sf.eval_G(refl)
    checks.append(Check.within("F_reflection_rel", np.max(np.abs(sf.eval_F(math.pi - refl) - F) / np.abs(F)), 1e-12))
    # G vanishes at pi/2; scale by the local magnitude of its two terms
    g_scale = np.abs(F) + 1.0
    checks.append(Check.within("G_antireflection_rel", np.max(np.abs(sf.eval_G(math.pi - refl) + G) / g_scale), 1e-12))
    for kind, target in (("F-at-0", 1 / 120), ("F-at-pi", 1 / 120), ("G-at-0", -7 / 960), ("G-at-pi", 7 / 960)):
        est = so.extract_constant(kind)
        checks.append(Check.within(f"constant_{kind}", abs(est.value - target), 1e-6))
    expansions = {
        "F-at-0": sf.expand_F(0.0), "F-at-pi": sf.expand_F(math.pi),
        "G-at-0": sf.expand_G(0.0), "G-at-pi": sf.expand_G(math.pi),
    }
    for kind, exp in expansions.items():
        est = so.extract_constant(kind)
        checks.append(Check.within(f"expansion_matches_oracle_{kind}", abs(float(exp.constant_term) - est.value), 1e-6))
    s = np.geomspace(1e-3, 1e-1, 25)
    for label, rem, center, const in (
        ("F_at_0", sf.remainder_F, 0.0, 1 / 120),
        ("F_at_pi", sf.remainder_F, math.pi, 1 / 120),
        ("G_at_0", sf.remainder_G, 0.0, -7 / 960),
        ("G_at_pi", sf.remainder_G, math.pi, 7 / 960),
    ):
        xi = s if center == 0.0 else math.pi - s
        slope = loglog_slope(s, rem(xi, center) - const)
        checks.append(Check.within(f"residual_slope_{label}", abs(slope - 2.0), 0.1))
    return checks


def oracle_checks():
    checks = []
    grid = np.linspace(0.3, math.pi - 0.3, 50)
    params = so.AbelSumParams()
    errF = max(abs(so.abel_F(x, params).value - sf.eval_F(x)) for x in grid)
    errG = max(abs(so.abel_G(x, params).value - sf.eval_G(x)) for x in grid)
    checks.append(Check.within("abel_F_vs_closed", errF, 1e-6))
    checks.append(Check.within("abel_G_vs_closed", errG, 1e-6))
    xi = 1.0
    limit = so.abel_F(xi).value
    lams = np.array(params.lambda_grid)
    bias = np.array(so.abel_partial_sums("F", xi, params)) - limit
    checks.append(Check.within("abel_bias_slope_deficit", max(0.0, 1.8 - loglog_slope(lams, bias)), 0.0))
    for kind, target in (("F-at-0", 1 / 120), ("G-at-0", -7 / 960), ("G-at-pi", 7 / 960)):
        est = so.extract_constant(kind, method="abel")
        checks.append(Check.within(f"abel_constant_{kind}", abs(est.value - target), 1e-6))
    for k in range(5):
        h = 0.5
        exact = [0.0, 0.0, 0.0, 6.0, 24 * 1.7][k]
        got = so.fd_third_derivative(lambda x, k=k: x**k, 1.7, h).value
        checks.append(Check.within(f"fd_polynomial_degree_{k}", abs(got - exact) / max(1.0, abs(exact)), 1e-10))
    return checks


def _mode_specs(n_max=5, n_random=20, seed=2024):
    rng = np.random.default_rng(seed)
    kperps = rng.uniform(-4.0, 4.0, size=(n_random, 2))
    for kind in (SetupKind.CC, SetupKind.CP):
        setup = Setup(kind, 1.0)
        for n in range(n_max + 1):
            for pol in bm.Polarization:
                if kind is SetupKind.CC and n == 0 and pol is bm.Polarization.TE:
                    continue
                for kp in kperps:
                    yield bm.ModeSpec(setup, n, tuple(kp), pol)


def modes_checks():
    bc = tangential = permeable_electric = 0.0
    for spec in _mode_specs():
        for plate in bm.Plate:
            bc = max(bc, bm.check_bc(spec, plate, 8))
            conductor = bm.plate_type(spec.setup.kind, plate) == "conductor"
            species = bm.Species.ELECTRIC if conductor else bm.Species.MAGNETIC
            for phase in (0.0, 0.7, 2.1):
                f = bm.plate_force(spec, plate, species, 0.3, -0.2, phase)
                tangential = max(tangential, abs(f[0]), abs(f[1]))
            if not conductor:
                E, B = bm.mode_field(spec, (0.3, -0.2, spec.setup.a), 0.7)
                dens = bm.surface_densities(E, B, bm.outward_normal(plate), bm.Species.ELECTRIC)
                permeable_electric = max(permeable_electric, abs(dens.sigma), *np.abs(dens.K))
    mismatch = bm.check_bc(bm.ModeSpec(Setup("cc"), 1, (1.0, 0.5), "TM"), bm.Plate.TOP, 8, against="cp")
    eb = 0.0
    for kind in (SetupKind.CC, SetupKind.CP):
        setup = Setup(kind, 1.0)
        for n in range(4):
            for kp in ((1.3, 0.4), (0.2, -2.0)):
                specs = [bm.ModeSpec(setup, n, sgn * np.array(kp), pol)
                         for sgn in (1, -1) for pol in bm.Polarization
                         if not (kind is SetupKind.CC and n == 0 and pol is bm.Polarization.TE)]
                for z in (0.1, 0.37, 0.8):
                    eb = max(eb, np.max(np.abs(bm.symmetrized_EB(specs, (0.0, 0.0, z)))))
    return [
        Check.within("boundary_condition_violation", bc, 1e-12),
        Check.within("tangential_force", tangential, 1e-12),
        Check.within("electric_density_on_permeable_plate", permeable_electric, 1e-12),
        Check.within("mismatched_bc_detected_deficit", max(0.0, 0.1 - mismatch), 0.0),
        Check.within("EB_mode_cancellation", eb, 1e-10),
    ]


def pressure_checks():
    checks = []
    cc = pr.net_pressure(Setup("cc", 1.0))
    cp = pr.net_pressure(Setup("cp", 1.0))
    checks.append(Check.within("cc_net_rel_error", abs(cc.net / (-math.pi**2 / 240) - 1), 1e-12))
    checks.append(Check.within("cp_net_rel_error", abs(cp.net / (7 * math.pi**2 / 1920) - 1), 1e-12))
    checks.append(Check.within("cc_divergence_cancels", 0.0 if cc.divergence_cancels else 1.0, 0.0))
    checks.append(Check.within("cp_divergence_cancels", 0.0 if cp.divergence_cancels else 1.0, 0.0))
    for a in (0.5, 1.0, 2.0, 10.0):
        ratio = pr.net_pressure(Setup("cp", a)).net / pr.net_pressure(Setup("cc", a)).net
        checks.append(Check.within(f"ratio_minus_7_8_a={a:g}", abs(ratio + 7 / 8), 1e-14))
    d = np.geomspace(1e-3, 1e-1, 21)
    for kind in ("cc", "cp"):
        prof = pr.numeric_cancellation_profile(Setup(kind, 1.0), d)
        slope = loglog_slope([p[0] for p in prof], [p[1] for p in prof])
        checks.append(Check.within(f"{kind}_cancellation_slope", abs(slope - 2.0), 0.1))
    oracle = pr.net_pressure(Setup("cc", 1.0), method="oracle").net
    checks.append(Check.within("cc_oracle_vs_closed", abs(oracle - cc.net), 1e-6))
    return checks


def identity_checks():
    p_res, e_res = pr.difference_identity(1.0)
    return [
        Check.within("difference_identity_pressure", abs(p_res), 1e-14),
        Check.within("difference_identity_energy", abs(e_res), 1e-14),
    ]


_RUNNERS = {
    "specfun": specfun_checks,
    "oracle": oracle_checks,
    "modes": modes_checks,
    "pressure": pressure_checks,
    "identity": identity_checks,
}


def run(suite: str = "all") -> dict:
    names = SUITES if suite == "all" else (suite,)
    if any(n not in _RUNNERS for n in names):
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    checks = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sf.GuardBandWarning)
        for name in names:
            for c in _RUNNERS[name]():
                c.name = f"{name}.{c.name}"
                checks.append(c)
    return {
        "suite": suite,
        "passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }


def report_schema() -> dict:
    text = resources.files("lorentz_casimir").joinpath("schemas/verify_report.schema.json").read_text()
    return json.loads(text)
