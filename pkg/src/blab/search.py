"""Lower bounds for sup_{z in C+} g(z) by grid search plus local refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .halfplane import HalfPlanePoint
from .quadrature import QuadConfig

_BASE = 8
_TOP_K = 4


@dataclass(frozen=True)
class SupResult:
    sup: float
    witness: HalfPlanePoint
    on_hull: bool

    def __iter__(self):
        return iter((self.sup, self.witness, self.on_hull))


def _safe(g, z):
    v = np.asarray(g(z), dtype=float)
    return np.where(np.isfinite(v), v, -np.inf)


def _grid(level: int, cfg: QuadConfig):
    n = _BASE * 2 ** level + 1
    R, floor = cfg.truncation_radius, cfg.boundary_floor
    xs = np.logspace(-4, math.log10(R), n)
    xs = np.concatenate([-xs[::-1], [0.0], xs])
    ys = np.logspace(math.log10(floor), math.log10(R), n)
    return (xs[None, :] + 1j * ys[:, None]).ravel()


def _hint_grid(p: complex, level: int):
    n = _BASE * 2 ** level + 1
    v = p.imag
    xs = p.real + v * np.linspace(-4, 4, n)
    ys = v * np.logspace(-2, 2, n)
    return (xs[None, :] + 1j * ys[:, None]).ravel()


def sup_search(g, cfg: QuadConfig | None = None, hints=(), density: int = 2) -> SupResult:
    """Best value of the nonnegative objective ``g`` found on nested log grids.

    Grids at levels 0..density are scanned; the top few points of every level
    seed a bounded Nelder-Mead search in (x, ln y).  Because grids are nested
    and seeds accumulate, the result never decreases with ``density``.
    ``on_hull`` flags a witness at y ~ boundary_floor, y ~ R or |x| ~ R.
    """
    cfg = cfg or QuadConfig()
    R, floor = cfg.truncation_radius, cfg.boundary_floor
    hints = [complex(h) for h in hints]
    seeds = []
    best_z, best_v = 1j, -np.inf
    for level in range(density + 1):
        pts = [_grid(level, cfg)] + [_hint_grid(h, level) for h in hints]
        z = np.concatenate(pts)
        z = z[(z.imag >= floor) & (z.imag <= R) & (np.abs(z.real) <= R)]
        v = _safe(g, z)
        order = np.argsort(-v, kind="stable")[:_TOP_K]
        seeds.extend(z[order])
        i = int(order[0])
        if v[i] > best_v:
            best_v, best_z = float(v[i]), complex(z[i])

    lo_s, hi_s = math.log(floor), math.log(R)

    def neg(p):
        zz = complex(p[0], math.exp(p[1]))
        val = float(_safe(g, np.array([zz]))[0])
        return -val if val > -np.inf else 1e300

    seen = set()
    for s in seeds:
        key = (round(s.real, 12), round(s.imag, 15))
        if key in seen:
            continue
        seen.add(key)
        x0 = [s.real, math.log(s.imag)]
        res = minimize(neg, x0, method="Nelder-Mead", bounds=[(-R, R), (lo_s, hi_s)],
                       options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 400})
        if -res.fun > best_v:
            best_v = float(-res.fun)
            best_z = complex(res.x[0], math.exp(res.x[1]))

    if not np.isfinite(best_v):
        best_v = 0.0
    on_hull = best_z.imag <= 2 * floor or best_z.imag >= R / 2 or abs(best_z.real) >= R / 2
    return SupResult(max(best_v, 0.0), HalfPlanePoint.of(best_z), bool(on_hull))
