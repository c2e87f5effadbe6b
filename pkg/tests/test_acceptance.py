"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line with the measured value
and tolerance, also when run as ``python3 tests/test_acceptance.py``.
"""
import math
import sys
import time
import warnings
from fractions import Fraction

import numpy as np
import pytest

from lorentz_casimir import boundary_modes as bm
from lorentz_casimir import pressure as pr
from lorentz_casimir import specfun as sf
from lorentz_casimir import spectral_oracle as so
from lorentz_casimir.correlators import Setup, SetupKind

PI = math.pi
_capture = None


@pytest.fixture(autouse=True)
def _terminal(pytestconfig):
    global _capture
    _capture = pytestconfig.pluginmanager.getplugin("capturemanager")
    yield
    _capture = None


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    if _capture is not None:
        with _capture.global_and_fixture_disabled():
            print("\n" + line, flush=True)
    else:
        print(line, flush=True)
    assert ok, line


def loglog_slope(x, y):
    return float(np.polyfit(np.log(np.abs(x)), np.log(np.abs(y)), 1)[0])


def test_1_cc_pressure():
    t0 = time.perf_counter()
    net = pr.net_pressure(Setup("cc", 1.0)).net
    dt = time.perf_counter() - t0
    rel = abs(net / (-PI**2 / 240) - 1)
    report(1, "CC pressure = -pi^2/240", rel <= 1e-12 and dt < 1.0,
           f"P={net:.17g}, rel err {rel:.1e} <= 1e-12, {dt * 1e3:.2f} ms < 1 s")


def test_2_cp_pressure():
    net = pr.net_pressure(Setup("cp", 1.0)).net
    rel = abs(net / (7 / 8 * PI**2 / 240) - 1)
    report(2, "CP pressure = +7/8 pi^2/240", rel <= 1e-12 and net > 0,
           f"P={net:.17g}, rel err {rel:.1e} <= 1e-12, positive={net > 0}")


def test_3_ratio():
    worst = max(abs(pr.net_pressure(Setup("cp", a)).net / pr.net_pressure(Setup("cc", a)).net + 7 / 8)
                for a in (0.5, 1.0, 2.0, 10.0))
    report(3, "P_CP/P_CC = -7/8", worst <= 1e-14, f"max |ratio + 7/8| = {worst:.1e} <= 1e-14")


def test_4_oracle_equivalence():
    t0 = time.perf_counter()
    grid = np.linspace(0.3, PI - 0.3, 50)
    err_f = max(abs(so.abel_F(x).value - sf.eval_F(x)) for x in grid)
    err_g = max(abs(so.abel_G(x).value - sf.eval_G(x)) for x in grid)
    dt = time.perf_counter() - t0
    report(4, "Abel oracle vs closed forms", max(err_f, err_g) < 1e-6 and dt < 30,
           f"F {err_f:.1e}, G {err_g:.1e} < 1e-6, {dt:.2f} s < 30 s")


def test_5_expansion_constants():
    targets = {"F-at-0": 1 / 120, "F-at-pi": 1 / 120, "G-at-0": -7 / 960, "G-at-pi": 7 / 960}
    # two routes: real distances s -> 0, and the Abel regulator as an imaginary distance
    errs = {k: abs(so.extract_constant(k).value - v) for k, v in targets.items()}
    abel = {k: abs(so.extract_constant(k, method="abel").value - v) for k, v in targets.items()}
    report(5, "constants 1/120, -7/960, +7/960 by Richardson", max(*errs.values(), *abel.values()) <= 1e-6,
           ", ".join(f"{k} {e:.1e}/{abel[k]:.1e}" for k, e in errs.items()) + " (distance/abel) <= 1e-6")


def test_6_divergence_cancellation():
    exact = True
    coeffs = []
    for kind in ("cc", "cp"):
        res = pr.net_pressure(Setup(kind, 1.0))
        exact &= res.divergence_cancels and res.left.divergent == -Fraction(3, 16) \
            and res.right.divergent == Fraction(3, 16)
        coeffs.append(res.left.divergent_coeff)
    d = np.geomspace(1e-3, 1e-1, 21)
    slopes = []
    for kind in ("cc", "cp"):
        prof = pr.numeric_cancellation_profile(Setup(kind, 1.0), d)
        slopes.append(loglog_slope([p[0] for p in prof], [p[1] for p in prof]))
    ok = exact and all(abs(s - 2) <= 0.1 for s in slopes) and abs(coeffs[0] + 3 / (16 * PI**2)) < 1e-18
    report(6, "+-3/(16 pi^2) cancel exactly, residual ~ d^2", ok,
           f"symbolic cancel={exact}, slopes CC {slopes[0]:.4f} CP {slopes[1]:.4f} in 2 +- 0.1")


def test_7_difference_identity():
    p_res, e_res = pr.difference_identity(1.0)
    report(7, "CP = CC(2a) - CC(a) identity", abs(p_res) < 1e-14 and abs(e_res) < 1e-14,
           f"pressure {abs(p_res):.1e}, energy {abs(e_res):.1e} < 1e-14")


def test_8_force_normality():
    rng = np.random.default_rng(8)
    kperps = rng.uniform(-5.0, 5.0, size=(20, 2))
    tangential = permeable_electric = 0.0
    count = 0
    for kind in SetupKind:
        setup = Setup(kind, 1.0)
        for n in range(6):
            for pol in bm.Polarization:
                if kind is SetupKind.CC and n == 0 and pol is bm.Polarization.TE:
                    continue
                for kp in kperps:
                    spec = bm.ModeSpec(setup, n, tuple(kp), pol)
                    count += 1
                    for plate in bm.Plate:
                        conductor = bm.plate_type(kind, plate) == "conductor"
                        species = bm.Species.ELECTRIC if conductor else bm.Species.MAGNETIC
                        for x, y, phase in ((0.0, 0.0, 0.0), (0.31, -0.77, 1.1), (1.9, 0.4, 2.6)):
                            f = bm.plate_force(spec, plate, species, x, y, phase)
                            tangential = max(tangential, abs(f[0]), abs(f[1]))
                            if not conductor:
                                z = setup.a
                                E, B = bm.mode_field(spec, (x, y, z), phase)
                                dens = bm.surface_densities(E, B, bm.outward_normal(plate), "electric")
                                permeable_electric = max(permeable_electric, abs(dens.sigma), *np.abs(dens.K))
    ok = tangential <= 1e-12 and permeable_electric <= 1e-12
    report(8, "per-mode plate force is normal", ok,
           f"{count} modes, tangential {tangential:.1e}, electric density on permeable plate "
           f"{permeable_electric:.1e} <= 1e-12")


def test_9_cross_correlator():
    rng = np.random.default_rng(9)
    worst = 0.0
    for kind in SetupKind:
        setup = Setup(kind, 1.0)
        for n in range(4):
            for kp in rng.uniform(-4.0, 4.0, size=(5, 2)):
                specs = [bm.ModeSpec(setup, n, sgn * kp, pol) for sgn in (1, -1) for pol in bm.Polarization
                         if not (kind is SetupKind.CC and n == 0 and pol is bm.Polarization.TE)]
                for z in (0.05, 0.3, 0.5, 0.77, 0.95):
                    pos = (rng.uniform(-1, 1), rng.uniform(-1, 1), z)
                    worst = max(worst, float(np.max(np.abs(bm.symmetrized_EB(specs, pos)))))
    report(9, "<E_i B_j> cancels per mode", worst <= 1e-10, f"max |sum Re E_i B_j*| {worst:.1e} <= 1e-10")


if __name__ == "__main__":
    warnings.simplefilter("ignore", sf.GuardBandWarning)
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
