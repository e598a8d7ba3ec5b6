"""Acceptance criteria, one test each, at the stated tolerances and runtime limits."""

import math
import time

import numpy as np
import pytest

from blab import cli
from blab import functions as mf
from blab.harness import SweepSpec, default_cfg, run_experiment
from blab.harness import experiments as ex
from blab.kernels import calibrate_c_alpha
from blab.operators import P, project, weighted_l1_norm
from blab.quadrature import Ball, BallPieces, QuadConfig, integrate_halfplane

LAMBDAS = (1e-1, 1e-2, 1e-3, 1e-4)


class timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.s = time.perf_counter() - self.t


def test_01_atom_mass(criterion):
    zetas = SweepSpec().zeta_grid(LAMBDAS, (10.0, 1e2, 1e3))
    with timer() as t:
        mass = [weighted_l1_norm(mf.AtomFZeta(z), cfg=QuadConfig(rel_tol=1e-9)).value
                for z in zetas]
    err = max(abs(m - 2) for m in mass)
    ok = len(zetas) == 12 and err <= 1e-6 and t.s < 30
    criterion(1, "atom mass = 2", ok, f"{len(zetas)} points, max |m-2| = {err:.2e}, {t.s:.1f}s")
    assert ok


def test_02_kernel_equivalence(criterion):
    with timer() as t:
        k = run_experiment("kernel_equivalence")
        a = run_experiment("atom_norms")
    spreads = {}
    for rep, g in ((k, "I"), (a, "P"), (a, "Pplus")):
        lo, hi = rep.window(g)
        spreads[g] = hi / lo
    conv = all(s.converged for s in k.samples + a.samples)
    n = len(k.group("I"))
    ok = max(spreads.values()) <= 50 and conv and t.s < 300 and n == 16
    detail = ", ".join(f"{g} max/min={v:.3g}" for g, v in spreads.items())
    criterion(2, "kernel equivalence windows <= 50", ok, f"{n} points, {detail}, {t.s:.0f}s")
    assert ok


def test_03_lower_bound(criterion):
    lam = 1e-4
    r = ex.kernel_integral(1j * lam, default_cfg("kernel_equivalence"))
    lb = math.log(1 + 1 / (4 * lam))
    ok = r.value >= lb - r.budget
    criterion(3, "I(i lambda) >= ln(1 + 1/(4 lambda))", ok, f"I={r.value:.5g}, bound={lb:.5g}")
    assert ok


def test_04_calibration_and_reproduction(criterion):
    with timer() as t:
        c0 = calibrate_c_alpha(0.0, QuadConfig(rel_tol=1e-7, tail_decay=6.0))
        worst = 0.0
        cfg = QuadConfig(rel_tol=1e-6)
        for alpha in (0.0, 1.0):
            for n in (3, 4):
                f = mf.RationalSymbol(n)
                for z in (1j, 0.5 + 2j, -3 + 0.2j, 0.1j, 10 + 5j):
                    exact = complex(f(np.asarray(z)))
                    worst = max(worst, abs(project(P(alpha), f, z, cfg) - exact) / abs(exact))
    dev = abs(abs(c0) * math.pi - 1)
    ok = dev < 1e-3 and worst <= 1e-4 and t.s < 120
    criterion(4, "calibration and reproducing property", ok,
              f"| |c0| pi - 1 | = {dev:.1e}, worst rel = {worst:.1e}, {t.s:.1f}s")
    assert ok


def test_05_mean_zero(criterion):
    r = run_experiment("mean_zero")
    cone = max(abs(s.ratio - 1) for s in r.group("cone_limit") if dict(s.params)["y"] == 1e3)
    slopes = r.group("slope")
    lin = max(abs(s.ratio - 1) for s in slopes)
    ok = r.verdict == "pass" and cone <= 0.05 and lin <= 0.10 and all(s.measured > 0 for s in slopes)
    criterion(5, "mean-zero necessity", ok, f"cone-limit dev {cone:.2e}, slope dev {lin:.2e}")
    assert ok


def test_06_theta(criterion):
    r = run_experiment("theta")
    pos = r.checks[0]
    spreads = {c.group: r.window(c.group)[1] / r.window(c.group)[0] for c in r.checks[1:]}
    n_w = len(r.group("log_theta"))
    ok = r.verdict == "pass" and n_w == 12 and spreads["size"] <= 100 and \
        all(v <= 20 for g, v in spreads.items() if g != "size")
    detail = pos.note + ", " + ", ".join(f"{g}={v:.3g}" for g, v in spreads.items())
    criterion(6, "theta_w properties", ok, detail)
    assert ok


def test_07_forelli_rudin(criterion):
    with timer() as t:
        r = run_experiment("forelli_rudin")
    worst = max(r.window(c.group)[1] / r.window(c.group)[0] for c in r.checks)
    ok = r.verdict == "pass" and worst <= 100 and len(r.samples) == 80 and t.s < 600
    criterion(7, "Forelli-Rudin windows <= 100", ok, f"worst spread {worst:.3g}, {t.s:.0f}s")
    assert ok


def test_08_factorization(criterion):
    r = run_experiment("factorization")
    worst = max(r.window(c.group)[1] / r.window(c.group)[0] for c in r.checks)
    ok = r.verdict == "pass" and worst <= 20
    criterion(8, "factorization windows <= 20", ok, f"worst spread {worst:.3g}")
    assert ok


def test_09_hankel(criterion):
    r = run_experiment("hankel")
    a = r.group("a_orthogonal")[0].ratio
    b = max(abs(s.ratio - 1) for s in r.group("b_slope"))
    c_b = max(s.ratio for s in r.group("c_bounded"))
    grow = [s.measured for s in r.group("c_log_symbol")]
    mono = all(y > x for x, y in zip(grow, grow[1:]))
    ok = r.verdict == "pass" and a < 0.02 and b <= 0.15 and mono
    criterion(9, "Hankel dichotomy", ok,
              f"(a) {a:.2%}, (b) slope dev {b:.2%}, (c) bounded max {c_b:.3g}, "
              f"log symbol {grow[0]:.3g} -> {grow[-1]:.3g}")
    assert ok


def test_10_quadrature_oracles(criterion):
    q = integrate_halfplane(lambda z: np.abs(z + 1j) ** -4,
                            QuadConfig(rel_tol=1e-7, tail_decay=4.0), hints=[1j])
    e1 = abs(q.value / (math.pi / 4) - 1)
    d = integrate_halfplane(BallPieces([(Ball(1j, 0.5), 1.0)]))
    e2 = abs(d.value / (math.pi / 4) - 1)
    from test_functions import fd_excess
    rng = np.random.default_rng(0)
    z = rng.uniform(-20, 20, 1000) + 1j * 10 ** rng.uniform(-2, 2, 1000)
    e3 = fd_excess(z)
    ok = e1 <= 1e-5 and e2 <= 1e-5 and e3 <= 1e-6
    criterion(10, "quadrature and derivative oracles", ok,
              f"quartic {e1:.1e}, disc {e2:.1e}, finite differences {e3:.1e}")
    assert ok


def test_11_determinism(criterion, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "run.cfg").write_text("samples=20000\nk_list=0,0.5,1\n")
    outs = []
    for name in ("first.csv", "second.csv"):
        code = cli.main(["run", "pointwise_bloch", "--config", "run.cfg", "--seed", "11",
                         "--out", name])
        outs.append((code, (tmp_path / name).read_bytes()))
    ok = outs[0][0] == outs[1][0] == 0 and outs[0][1] == outs[1][1]
    criterion(11, "byte-identical reruns", ok, f"{len(outs[0][1])} bytes")
    assert ok
