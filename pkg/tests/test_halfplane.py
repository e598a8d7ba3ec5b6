import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blab.halfplane import (
    OMEGA_1, OMEGA_2, Ball, CarlesonSquare, Cone, DomainError, GeneralWeight, HalfDisc,
    HalfPlanePoint, LogLog, OmegaPow, Rect, Rho, Shell, as_complex, eval_weight, ln_plus,
    log_power_integral, omega, region_contains,
)

xs = st.floats(-1e6, 1e6, allow_nan=False)
ys = st.floats(1e-9, 1e6, allow_nan=False)


def test_point_validation():
    p = HalfPlanePoint(1.0, 2.0)
    assert p.z == 1 + 2j and p.modulus() == pytest.approx(math.sqrt(5))
    assert HalfPlanePoint.of(3j) == HalfPlanePoint(0.0, 3.0)
    for bad in [(0.0, 0.0), (1.0, -1.0), (math.nan, 1.0)]:
        with pytest.raises(DomainError):
            HalfPlanePoint(*bad)
    with pytest.raises(DomainError):
        as_complex(1.0)
    with pytest.raises(DomainError):
        as_complex(np.array([1j, 2.0]))


def test_ln_plus():
    assert ln_plus(0.5) == 0.0
    assert ln_plus(math.e) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        ln_plus(0.0)


def test_omega_examples():
    assert omega(1j) == 1.0
    assert omega(10j) == pytest.approx(1 + math.log(10))
    assert omega(1e-3j) == pytest.approx(1 + math.log(1e3))
    assert OmegaPow(2)(10j) == pytest.approx((1 + math.log(10)) ** 2)
    assert eval_weight(OmegaPow(0), 5 + 1j) == 1.0


def test_general_weight_switches():
    z = 3 + 0.5j
    a, b = math.log(math.e + abs(z)), math.log(math.e + 2.0)
    assert GeneralWeight((0, 0, 0, 0), 0.0, 0.0)(z) == 1.0
    assert GeneralWeight((1, 1, 0, 0), 1.0, 0.0)(z) == pytest.approx(a + b)
    assert GeneralWeight((1, 1, 1, 1), -1.0, 1.0)(z) == pytest.approx(
        math.log(math.e + a + b) / (a + b))
    assert OMEGA_1(z) == pytest.approx(1 + b)
    assert OMEGA_2(z) == pytest.approx(a + 1)
    with pytest.raises(DomainError):
        GeneralWeight((1, 2, 0, 0))


def test_rho_and_loglog():
    assert Rho(1)(1j) == pytest.approx(1 / (1 + math.log(math.e + 1)))
    assert LogLog()(1j) == 1.0
    assert LogLog()(1e-10j) == pytest.approx(1 + math.log(math.log(1e10)))


@given(xs, ys)
@settings(max_examples=200, deadline=None)
def test_omega_properties(x, y):
    z = complex(x, y)
    w = omega(z)
    assert w >= 1.0
    assert omega(complex(-x, y)) == w
    assert w <= 1 + abs(math.log(y)) + max(math.log(max(abs(z), 1e-300)), 0) + 1e-12


def test_log_power_integral():
    from scipy.integrate import quad
    for k in (-1.0, 0.0, 0.5, 2.0):
        ref, _ = quad(lambda s: math.log(s) ** k / s, 2, 50)
        assert log_power_integral(k, 50) == pytest.approx(ref, rel=1e-9)
    with pytest.raises(DomainError):
        log_power_integral(1.0, 1.5)


def test_regions():
    assert Ball(1j, 0.5).inside_halfplane and not Ball(1j, 2).inside_halfplane
    assert Ball(1j, 0.5).area == pytest.approx(math.pi / 4)
    assert CarlesonSquare(1j).rect() == Rect(-1, 1, 0, 2)
    assert CarlesonSquare(1j).area == 4.0
    assert Shell(1j, 0).area == 4.0
    # Q_{2i} minus Q_i: 16 - 4
    assert Shell(1j, 1).area == pytest.approx(12.0)
    assert region_contains(Shell(1j, 1), 0.5 + 3j)
    assert not region_contains(Shell(1j, 1), 0.5 + 1j)
    assert region_contains(Cone(), 1 + 2j) and not region_contains(Cone(), 3 + 2j)
    assert not region_contains(Cone(y_max=2), 3j)
    assert region_contains(HalfDisc(2), 1 + 1j) and not region_contains(HalfDisc(2), 2 + 1j)


@given(st.floats(-5, 5), st.floats(0.01, 5), st.integers(0, 4), xs, ys)
@settings(max_examples=200, deadline=None)
def test_shell_rects_tile_the_shell(u, v, j, x, y):
    s = Shell(complex(u, v), j)
    z = complex(x, y)
    in_rects = any(bool(r.contains(z)) for r in s.rects())
    # rect edges are closed, so only compare away from the boundary lines
    edges = [u - 2 ** j * v, u + 2 ** j * v, u - 2 ** (j - 1) * v, u + 2 ** (j - 1) * v]
    if min(abs(x - e) for e in edges) > 1e-9 and abs(y - 2 ** j * v) > 1e-9:
        assert in_rects == bool(s.contains(z))
