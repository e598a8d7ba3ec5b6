"""Bergman kernels of the upper half-plane and their modified variants."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .halfplane import DomainError, as_complex
from .quadrature import QuadConfig, integrate_halfplane

PROBES = (1j, 1 + 1j, 3j)


class CalibrationError(RuntimeError):
    pass


_CALIBRATED: dict[float, complex] = {}


def reference_c_alpha(alpha: float) -> complex:
    """Textbook constant -(alpha+1)(2i)^alpha / pi, used only as a cross-check."""
    return -(alpha + 1) * (2j) ** alpha / math.pi


def calibrate_c_alpha(alpha: float, cfg: QuadConfig | None = None) -> complex:
    """Constant making c/(z - conj(w))^(2+alpha) reproduce (w + i)^-4 against dV_alpha.

    One quadrature per probe point; the probes must agree to 10 x rel_tol.
    """
    if alpha < 0:
        raise DomainError("alpha must be >= 0")
    cfg = cfg or QuadConfig(rel_tol=1e-7, tail_decay=6.0)
    if cfg.tail_decay is None:
        cfg = cfg.with_(tail_decay=6.0)
    consts = []
    for z0 in PROBES:
        def integrand(w, z0=z0):
            return (z0 - np.conj(w)) ** (-2 - alpha) * (w + 1j) ** -4 * np.imag(w) ** alpha

        res = integrate_halfplane(integrand, cfg, hints=[z0])
        consts.append((z0 + 1j) ** -4 / res.value)
    consts = np.array(consts)
    c = complex(consts.mean())
    spread = float(np.max(np.abs(consts - c)))
    if spread > 10 * cfg.rel_tol * abs(c):
        raise CalibrationError(f"probe constants disagree for alpha={alpha}: {consts}")
    return c


def calibrated(alpha: float = 0.0) -> complex:
    """Cached calibration constant c_alpha."""
    alpha = float(alpha)
    if alpha not in _CALIBRATED:
        _CALIBRATED[alpha] = calibrate_c_alpha(alpha)
    return _CALIBRATED[alpha]


def set_calibration(alpha: float, c: complex) -> None:
    _CALIBRATED[float(alpha)] = complex(c)


@dataclass(frozen=True)
class KernelSpec:
    kind: str = "plain"  # plain | modified | abs_modified
    alpha: float = 0.0
    c_alpha: complex | None = None

    def __post_init__(self):
        if self.kind not in ("plain", "modified", "abs_modified"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.alpha < 0:
            raise DomainError("alpha must be >= 0")
        if self.kind != "plain" and self.alpha != 0:
            raise DomainError("modified kernels exist only for alpha = 0")

    @property
    def c(self) -> complex:
        return calibrated(self.alpha) if self.c_alpha is None else complex(self.c_alpha)


def _plain(c, alpha, z, zeta):
    return c * (z - np.conj(zeta)) ** (-2.0 - alpha) if alpha else c / (z - np.conj(zeta)) ** 2


def eval_kernel(spec: KernelSpec, z, zeta):
    z, zeta = as_complex(z), as_complex(zeta)
    c = spec.c
    if spec.kind == "plain":
        return _plain(c, spec.alpha, z, zeta)
    if spec.kind == "modified":
        return _plain(c, 0, z, zeta) - _plain(c, 0, z, 1j)
    return np.abs(_plain(c, 0, z, zeta)) - np.abs(_plain(c, 0, z, 1j))


def kernel_tail_bound(z, zeta) -> float:
    """|zeta - i| / |z + i|^3, valid where |z + i| > 4 |zeta - i|."""
    z, zeta = as_complex(z), as_complex(zeta)
    a, b = np.abs(zeta - 1j), np.abs(z + 1j)
    if np.any(b <= 4 * a):
        raise DomainError("kernel_tail_bound needs |z + i| > 4 |zeta - i|")
    out = a / b ** 3
    return float(out) if np.ndim(out) == 0 else out
