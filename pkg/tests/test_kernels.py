import math

import numpy as np
import pytest

from blab.halfplane import DomainError
from blab.kernels import (
    KernelSpec, calibrate_c_alpha, calibrated, eval_kernel, kernel_tail_bound, reference_c_alpha,
)
from blab.quadrature import QuadConfig


def test_c0_modulus():
    c0 = calibrated(0.0)
    assert abs(abs(c0) * math.pi - 1) < 1e-6
    assert c0 == pytest.approx(reference_c_alpha(0), rel=1e-6)


@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_calibration_matches_reference(alpha):
    c = calibrate_c_alpha(alpha, QuadConfig(rel_tol=1e-6, tail_decay=6.0))
    assert c == pytest.approx(reference_c_alpha(alpha), rel=1e-5)


def test_calibration_is_deterministic():
    cfg = QuadConfig(rel_tol=1e-6, tail_decay=6.0)
    assert calibrate_c_alpha(0.0, cfg) == calibrate_c_alpha(0.0, cfg)


def test_kernel_kinds():
    z, zeta = 1 + 2j, 3 + 0.5j
    c = calibrated(0.0)
    k = eval_kernel(KernelSpec(), z, zeta)
    assert k == pytest.approx(c / (z - np.conj(zeta)) ** 2)
    km = eval_kernel(KernelSpec("modified"), z, zeta)
    assert km == pytest.approx(k - c / (z + 1j) ** 2)
    ka = eval_kernel(KernelSpec("abs_modified"), z, zeta)
    assert ka == pytest.approx(abs(k) - abs(c / (z + 1j) ** 2))
    # the modified kernels vanish identically at zeta = i
    assert eval_kernel(KernelSpec("modified"), z, 1j) == 0
    assert eval_kernel(KernelSpec("abs_modified"), z, 1j) == 0


def test_kernel_spec_validation():
    with pytest.raises(DomainError):
        KernelSpec("modified", alpha=1.0)
    with pytest.raises(DomainError):
        KernelSpec(alpha=-1.0)
    with pytest.raises(ValueError):
        KernelSpec("other")
    assert KernelSpec(c_alpha=2.0).c == 2.0


def test_kernel_tail_bound():
    zeta = 2 + 1j
    z = np.array([100 + 1j, -50 + 30j, 0.01 + 80j])
    bound = kernel_tail_bound(z, zeta)
    km = np.abs(eval_kernel(KernelSpec("modified"), z, zeta))
    assert np.all(km <= 8 * bound)
    with pytest.raises(DomainError):
        kernel_tail_bound(1 + 1j, zeta)
