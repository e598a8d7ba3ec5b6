"""Numerical laboratory for logarithmically weighted Bergman and Bloch spaces
on the upper half-plane."""

from .halfplane import DomainError, HalfPlanePoint, omega
from .kernels import KernelSpec, calibrate_c_alpha, calibrated, eval_kernel
from .quadrature import ConvergenceError, IntegrationResult, QuadConfig, integrate_halfplane

__version__ = "0.1.0"

__all__ = ["DomainError", "HalfPlanePoint", "omega", "KernelSpec", "calibrate_c_alpha",
           "calibrated", "eval_kernel", "ConvergenceError", "IntegrationResult", "QuadConfig",
           "integrate_halfplane"]
