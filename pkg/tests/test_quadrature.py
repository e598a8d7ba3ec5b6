import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blab.halfplane import Ball, Cone, HalfDisc, Rect, Shell
from blab.quadrature import (
    NODES, W_GAUSS, W_KRONROD, BallPieces, ConvergenceError, IntegrationResult, QuadConfig,
    ball_rule, integrate_halfplane, integrate_region, tail_exponent,
)

# the domain is {y > boundary_floor}; the omitted strip is about floor * pi / 2 here
QUARTIC = QuadConfig(rel_tol=1e-8, tail_decay=4.0, boundary_floor=1e-13)


def quartic(z):
    return np.abs(z + 1j) ** -4


def test_kronrod_gauss_exactness():
    for d in range(0, 23):
        exact = (1 - (-1) ** (d + 1)) / (d + 1)
        assert np.dot(W_KRONROD, NODES ** d) == pytest.approx(exact, abs=1e-14)
    for d in range(0, 14):
        exact = (1 - (-1) ** (d + 1)) / (d + 1)
        assert np.dot(W_GAUSS, NODES ** d) == pytest.approx(exact, abs=1e-14)


def test_config_validation():
    for kw in [dict(rel_tol=0), dict(rel_tol=1.0), dict(truncation_radius=5),
               dict(tail_decay=2.0), dict(boundary_floor=1.0)]:
        with pytest.raises(ValueError):
            QuadConfig(**kw)
    assert QuadConfig().with_(rel_tol=1e-3).rel_tol == 1e-3


def test_quartic_oracle():
    r = integrate_halfplane(quartic, QUARTIC, hints=[1j])
    assert r.value == pytest.approx(math.pi / 4, rel=1e-7)
    assert r.tail_rigorous and r.converged
    assert abs(r.value - math.pi / 4) <= 10 * r.budget + 1e-12


def test_disc_area_and_atom_mass():
    disc = BallPieces([(Ball(1j, 0.5), 1.0)])
    assert integrate_halfplane(disc).value == pytest.approx(math.pi / 4, rel=1e-12)
    assert integrate_region(lambda z: np.ones(np.shape(z)), Ball(1j, 0.5)).value == \
        pytest.approx(math.pi / 4, rel=1e-10)


def test_region_areas():
    one = lambda z: np.ones(np.shape(z))
    assert integrate_region(one, Cone(y_max=2)).value == pytest.approx(3.0, rel=1e-9)
    assert integrate_region(one, Shell(1j, 1)).value == pytest.approx(12.0, rel=1e-8)
    assert integrate_region(one, Rect(-1, 2, 0, 1)).value == pytest.approx(3.0, rel=2e-8)
    assert integrate_region(one, HalfDisc(10.0)).value == pytest.approx(50 * math.pi, rel=1e-7)


def test_cone_log_growth():
    f = lambda z: np.abs(z + 1j) ** -2
    vals = [integrate_region(f, Cone(), QuadConfig(rel_tol=1e-8, truncation_radius=R)).value
            for R in (1e3, 1e4)]
    slope = (vals[1] - vals[0]) / math.log(10)
    assert slope == pytest.approx(math.pi / 2, rel=0.05)


def test_halving_tolerance_is_monotone():
    f = lambda z: np.abs(z + 1j) ** -4
    prev_err, prev_cells = math.inf, 0
    for tol in (1e-4, 5e-5, 2.5e-5, 1.25e-5):
        r = integrate_halfplane(f, QuadConfig(rel_tol=tol, tail_decay=4.0), hints=[1j])
        err = abs(r.value - math.pi / 4)
        assert err <= prev_err * 1.0000001 + 1e-15
        assert r.cells >= prev_cells
        prev_err, prev_cells = err, r.cells


@given(st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=8, deadline=None)
def test_linearity(a, b):
    cfg = QuadConfig(rel_tol=1e-7, tail_decay=4.0)
    f = lambda z: np.abs(z + 1j) ** -4
    g = lambda z: np.abs(z + 2j) ** -5 * z.imag
    If, Ig = integrate_halfplane(f, cfg, [1j]), integrate_halfplane(g, cfg, [2j])
    Ih = integrate_halfplane(lambda z: a * f(z) + b * g(z), cfg.with_(abs_tol=1e-9), [1j, 2j])
    budget = If.budget + Ig.budget + Ih.budget
    assert abs(Ih.value - a * If.value - b * Ig.value) <= 3 * budget + 1e-9


def test_reflection_symmetry():
    f = lambda z: np.abs(z - 2 + 1j) ** -4 + np.abs(z + 2 + 1j) ** -4
    cfg = QuadConfig(rel_tol=1e-8)
    full = integrate_halfplane(f, cfg.with_(tail_decay=4.0), hints=[2 + 1j, -2 + 1j])
    R = full.radius
    right = integrate_region(f, Rect(0, R, 0, R), cfg)
    # the square misses the corners of the half-disc; add back their tail by quadrature
    corner = integrate_region(lambda z: f(z) * (np.abs(z) > R), Rect(0, R, 0, R), cfg,
                              strict=False)
    assert 2 * (right.value - corner.value) == pytest.approx(full.value, rel=1e-5)


def test_tail_flags():
    slow = lambda z: np.abs(z + 1j) ** -2.2
    r = integrate_halfplane(slow, QuadConfig(rel_tol=1e-4), strict=False)
    assert not r.tail_rigorous
    assert r.tail_exponent == pytest.approx(2.2, rel=0.05)
    assert tail_exponent(quartic, 1e4) == pytest.approx(4.0, rel=1e-3)


def test_convergence_error_carries_partial():
    rough = lambda z: np.abs(np.sin(1e3 * z.real)) * np.abs(z + 1j) ** -4
    with pytest.raises(ConvergenceError) as ei:
        integrate_halfplane(rough, QuadConfig(rel_tol=1e-10, max_depth=2, tail_decay=4.0))
    assert isinstance(ei.value.partial, IntegrationResult)


def test_result_arithmetic():
    a = IntegrationResult(1.0, 0.1, 10)
    b = IntegrationResult(2.0, 0.2, 5, tail_rigorous=False)
    c = a + b
    assert c.value == 3.0 and c.cells == 15 and not c.tail_rigorous
    assert a.scaled(-2).value == -2.0 and a.scaled(-2).err_estimate == pytest.approx(0.2)


def test_ball_rule_and_pieces():
    nodes, w = ball_rule(Ball(2j, 0.5))
    assert w.sum() == pytest.approx(math.pi / 4, rel=1e-13)
    # harmonic function: mean value property
    assert np.sum(w * (nodes ** 3).real) == pytest.approx(math.pi / 4 * ((2j) ** 3).real)
    bp = BallPieces([(Ball(2j, 0.5), 2.0), (Ball(5j, 1.0), -1.0)])
    assert bp(np.array([2j, 5j, 10j])).tolist() == [2.0, -1.0, 0.0]
    assert integrate_halfplane(bp.abs()).value == pytest.approx(2 * math.pi / 4 + math.pi)
    assert integrate_halfplane(bp.times(lambda z: z.imag)).value == pytest.approx(
        2 * 2 * math.pi / 4 - 5 * math.pi, rel=1e-9)
