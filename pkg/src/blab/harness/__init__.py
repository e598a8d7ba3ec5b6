"""Experiment harness: sweeps, reports and the registry of checks."""

from .experiments import QUAD_DEFAULTS, REGISTRY, Experiment, default_cfg, run_experiment
from .report import Check, EquivalenceReport, Sample, SweepSpec, fit_slope, pmap

__all__ = ["QUAD_DEFAULTS", "REGISTRY", "Experiment", "default_cfg", "run_experiment", "Check", "EquivalenceReport", "Sample",
           "SweepSpec", "fit_slope", "pmap"]
