"""Sweep specifications, equivalence reports and their CSV form."""

from __future__ import annotations

import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from ..halfplane import DomainError

DEFAULT_THRESHOLD = 50.0


@dataclass(frozen=True)
class SweepSpec:
    """Overridable sweep parameters; ``None`` means the experiment's own default."""

    lambda_grid: tuple[float, ...] | None = None
    R_grid: tuple[float, ...] | None = None
    w_grid: tuple[complex, ...] | None = None
    k_list: tuple[float, ...] | None = None
    l_list: tuple[float, ...] | None = None
    j_list: tuple[float, ...] | None = None
    mirror: bool = False
    samples: int | None = None
    threshold: float | None = None
    seed: int = 0

    def __post_init__(self):
        for name in ("lambda_grid", "R_grid", "w_grid", "k_list", "l_list", "j_list"):
            v = getattr(self, name)
            if v is not None and len(v) == 0:
                raise DomainError(f"{name} must be nonempty")
        if self.lambda_grid is not None and not all(0 < t <= 1 for t in self.lambda_grid):
            raise DomainError("lambda_grid values must lie in (0, 1]")
        if self.R_grid is not None and not all(t >= 1 for t in self.R_grid):
            raise DomainError("R_grid values must be >= 1")
        if self.w_grid is not None and not all(complex(w).imag > 0 for w in self.w_grid):
            raise DomainError("w_grid points must lie in the upper half-plane")
        if self.samples is not None and self.samples < 1:
            raise DomainError("samples must be positive")

    @classmethod
    def field_types(cls) -> dict[str, str]:
        return {f.name: str(f.type) for f in fields(cls)}

    def zeta_grid(self, lambdas, radii) -> list[complex]:
        """zeta = xi + i lambda with |zeta| = R; mirrored (-xi) points appended on request."""
        out = []
        for lam in lambdas:
            for R in radii:
                if R <= lam:
                    continue
                z = complex(math.sqrt(R * R - lam * lam), lam)
                if not abs(z - 1j) > 1:
                    raise DomainError(f"sweep point {z} violates |zeta - i| > 1")
                out.append(z)
                if self.mirror:
                    out.append(complex(-z.real, z.imag))
        return out


@dataclass(frozen=True)
class Sample:
    group: str
    params: tuple[tuple[str, float], ...]
    measured: float
    predicted: float
    err_estimate: float = 0.0
    converged: bool = True

    @property
    def ratio(self) -> float:
        if self.predicted == 0:
            return 0.0 if self.measured == 0 else math.inf
        return self.measured / self.predicted


@dataclass(frozen=True)
class Check:
    """A group of samples judged together.

    mode "window": max/min ratio <= threshold (two-sided equivalence);
    mode "upper": max ratio <= threshold (one-sided bound);
    mode "exact": every |ratio - 1| <= threshold;
    mode "flag": pass/fail decided by the experiment (``ok``).
    """

    group: str
    mode: str
    threshold: float
    ok: bool | None = None
    note: str = ""


@dataclass
class EquivalenceReport:
    claim_id: str
    samples: list[Sample]
    checks: list[Check]
    loglog_slope: float = math.nan
    notes: list[str] = field(default_factory=list)

    def group(self, name: str) -> list[Sample]:
        return [s for s in self.samples if s.group == name]

    def window(self, name: str | None = None) -> tuple[float, float]:
        name = name or self.checks[0].group
        r = [s.ratio for s in self.group(name)]
        if not r:
            return math.nan, math.nan
        return min(r), max(r)

    @property
    def ratio_min(self) -> float:
        return self.window()[0]

    @property
    def ratio_max(self) -> float:
        return self.window()[1]

    @property
    def threshold(self) -> float:
        return self.checks[0].threshold

    def check_passed(self, c: Check) -> bool:
        ss = self.group(c.group)
        if not all(s.converged for s in ss):
            return False
        if c.mode == "flag":
            return bool(c.ok)
        if not ss:
            return False
        r = np.array([s.ratio for s in ss])
        if not np.all(np.isfinite(r)):
            return False
        if c.mode == "upper":
            return bool(r.max() <= c.threshold)
        if c.mode == "exact":
            return bool(np.all(np.abs(r - 1) <= c.threshold))
        lo, hi = r.min(), r.max()
        return bool(lo > 0 and hi / lo <= c.threshold)

    @property
    def verdict(self) -> str:
        return "pass" if all(self.check_passed(c) for c in self.checks) else "fail"

    # ---------------------------------------------------------------- output

    def param_names(self) -> list[str]:
        names: list[str] = []
        for s in self.samples:
            for k, _ in s.params:
                if k not in names:
                    names.append(k)
        return names

    def to_csv(self, sep: str = ",") -> str:
        names = self.param_names()
        passed = {c.group: self.check_passed(c) for c in self.checks}
        buf = io.StringIO()
        head = ["claim_id", "group", *names, "measured", "predicted", "ratio",
                "err_estimate", "verdict"]
        buf.write(sep.join(head) + "\n")
        for s in self.samples:
            p = dict(s.params)
            row = [self.claim_id, s.group, *(_fmt(p[n]) if n in p else "" for n in names),
                   _fmt(s.measured), _fmt(s.predicted), _fmt(s.ratio), _fmt(s.err_estimate),
                   "pass" if passed.get(s.group, True) else "fail"]
            buf.write(sep.join(row) + "\n")
        return buf.getvalue()

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            lo, hi = self.window(c.group)
            lines.append(f"{self.claim_id}/{c.group}: ratio_min={_fmt(lo)} ratio_max={_fmt(hi)} "
                         f"mode={c.mode} threshold={_fmt(c.threshold)} "
                         f"{'pass' if self.check_passed(c) else 'fail'}"
                         + (f" ({c.note})" if c.note else ""))
        lines.append(f"{self.claim_id}: slope={_fmt(self.loglog_slope)} verdict={self.verdict}")
        return "\n".join(lines + self.notes)


def _fmt(x) -> str:
    # repr-free, locale-independent formatting
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


def fit_slope(xs, ys) -> float:
    """Least-squares slope of ys against xs."""
    xs, ys = np.asarray(xs, float), np.asarray(ys, float)
    if len(xs) < 2:
        return math.nan
    return float(np.polyfit(xs, ys, 1)[0])


def threads() -> int:
    try:
        n = int(os.environ.get("BLAB_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else min(4, os.cpu_count() or 1)


def pmap(fn, items) -> list:
    """Order-preserving map over worker threads (capped by BLAB_THREADS)."""
    items = list(items)
    n = threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
