"""Adaptive cubature over the upper half-plane and its subregions.

Every domain is pulled back to the unit square by an explicit map, and the
square is integrated by a tensor Gauss-Kronrod (7, 15) rule with adaptive
bisection.  The half-plane itself uses log-polar coordinates
``z = exp(s) * exp(i phi)``, which turns the ``|z|^-2`` behaviour at infinity
into something flat in ``s`` and makes truncation at ``|z| = R`` exact.

Integrands are vectorised callables ``f(z) -> array`` on complex arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate as _sp_integrate

from .halfplane import (
    Ball,
    CarlesonSquare,
    Cone,
    DomainError,
    HalfDisc,
    HalfPlanePoint,
    Rect,
    Shell,
)

# Gauss-Kronrod 15 abscissae (positive half, descending) and weights, QUADPACK qk15
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
W_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
W_GAUSS = np.zeros(15)
# Gauss nodes sit at the odd positions of the Kronrod set
W_GAUSS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

MAX_CELLS = 400_000
_CHUNK = 3000


class ConvergenceError(RuntimeError):
    """Tolerance not met; ``partial`` holds the best available result."""

    def __init__(self, msg, partial: "IntegrationResult"):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-5
    abs_tol: float = 1e-10
    max_depth: int = 40
    truncation_radius: float = 1e4
    boundary_floor: float = 1e-8
    tail_decay: float | None = None

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not self.truncation_radius >= 10:
            raise ValueError("truncation_radius must be >= 10")
        if not 0 < self.boundary_floor <= 1e-6 * self.truncation_radius:
            raise ValueError("boundary_floor must lie in (0, 1e-6 * truncation_radius]")
        if self.tail_decay is not None and not self.tail_decay > 2:
            raise ValueError("tail_decay must exceed 2 (integrable power tail)")

    def with_(self, **kw) -> "QuadConfig":
        return replace(self, **kw)


@dataclass(frozen=True)
class IntegrationResult:
    value: complex | float
    err_estimate: float
    cells: int
    tail_bound: float = 0.0
    radius: float = math.inf
    tail_rigorous: bool = True
    tail_exponent: float = math.nan
    converged: bool = True

    @property
    def budget(self) -> float:
        return self.err_estimate + self.tail_bound

    def __add__(self, other: "IntegrationResult") -> "IntegrationResult":
        return IntegrationResult(
            self.value + other.value,
            self.err_estimate + other.err_estimate,
            self.cells + other.cells,
            self.tail_bound + other.tail_bound,
            min(self.radius, other.radius),
            self.tail_rigorous and other.tail_rigorous,
            min(self.tail_exponent, other.tail_exponent),
            self.converged and other.converged,
        )

    def scaled(self, c: float) -> "IntegrationResult":
        a = abs(c)
        return replace(self, value=c * self.value, err_estimate=a * self.err_estimate,
                       tail_bound=a * self.tail_bound)


@dataclass
class BallPieces:
    """Integrand supported on disjoint closed balls, smooth on each ball.

    ``pieces`` holds ``(ball, g)`` with ``g`` a constant or a vectorised
    callable.  Integration runs in polar coordinates about each centre, so
    the discontinuities at the ball edges are resolved exactly.
    """

    pieces: list = field(default_factory=list)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for ball, g in self.pieces:
            inside = ball.contains(z)
            if np.any(inside):
                out[inside] += g(z[inside]) if callable(g) else g
        return out

    def map(self, fn: Callable) -> "BallPieces":
        """Pointwise ``fn(value, z)``; valid because the balls are disjoint."""

        def wrap(g):
            if callable(g):
                return lambda z: fn(g(z), z)
            return lambda z: fn(g * np.ones(np.shape(z), dtype=complex), z)

        return BallPieces([(b, wrap(g)) for b, g in self.pieces])

    def abs(self) -> "BallPieces":
        return self.map(lambda v, z: np.abs(v))

    def times(self, h: Callable) -> "BallPieces":
        return self.map(lambda v, z: v * h(z))


# --------------------------------------------------------------------------
# adaptive engine on the unit square


def _fsum(x: np.ndarray):
    if np.iscomplexobj(x):
        return complex(math.fsum(x.real), math.fsum(x.imag))
    return math.fsum(x)


def _eval_cells(F, cells):
    n = len(cells)
    cu = 0.5 * (cells[:, 0] + cells[:, 1])
    hu = 0.5 * (cells[:, 1] - cells[:, 0])
    cv = 0.5 * (cells[:, 2] + cells[:, 3])
    hv = 0.5 * (cells[:, 3] - cells[:, 2])
    U = cu[:, None] + hu[:, None] * NODES[None, :]
    V = cv[:, None] + hv[:, None] * NODES[None, :]
    vals = np.broadcast_to(F(U[:, :, None], V[:, None, :]), (n, 15, 15))
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand is not finite at a quadrature node")
    area = hu * hv
    ikk = area * np.einsum("i,nij,j->n", W_KRONROD, vals, W_KRONROD)
    igk = area * np.einsum("i,nij,j->n", W_GAUSS, vals, W_KRONROD)
    ikg = area * np.einsum("i,nij,j->n", W_KRONROD, vals, W_GAUSS)
    igg = area * np.einsum("i,nij,j->n", W_GAUSS, vals, W_GAUSS)
    eu = np.abs(ikk - igk)
    ev = np.abs(ikk - ikg)
    err = np.maximum(np.maximum(eu, ev), np.abs(ikk - igg))
    return ikk, eu, ev, err


def _split(cells, eu, ev):
    out = []
    both = (eu >= 0.25 * ev) & (ev >= 0.25 * eu)
    su = ~both & (eu > ev)
    sv = ~both & ~su
    u0, u1, v0, v1 = cells.T
    um = 0.5 * (u0 + u1)
    vm = 0.5 * (v0 + v1)
    b = both
    out.append(np.stack([u0[b], um[b], v0[b], vm[b]], 1))
    out.append(np.stack([um[b], u1[b], v0[b], vm[b]], 1))
    out.append(np.stack([u0[b], um[b], vm[b], v1[b]], 1))
    out.append(np.stack([um[b], u1[b], vm[b], v1[b]], 1))
    out.append(np.stack([u0[su], um[su], v0[su], v1[su]], 1))
    out.append(np.stack([um[su], u1[su], v0[su], v1[su]], 1))
    out.append(np.stack([u0[sv], u1[sv], v0[sv], vm[sv]], 1))
    out.append(np.stack([u0[sv], u1[sv], vm[sv], v1[sv]], 1))
    return np.concatenate(out, 0)


def adaptive_square(F, cells0: np.ndarray, rel_tol: float, abs_tol: float,
                    max_depth: int, max_cells: int = MAX_CELLS) -> IntegrationResult:
    """Globally adaptive tensor G7/K15 cubature of ``F(u, v)`` over given cells."""
    acc_val, acc_err = [], []
    active = np.asarray(cells0, dtype=float)
    depth = 0
    ncells = 0
    converged = True
    while len(active):
        parts = [_eval_cells(F, active[i:i + _CHUNK]) for i in range(0, len(active), _CHUNK)]
        ikk, eu, ev, err = (np.concatenate(p) for p in zip(*parts))
        ncells += len(active)
        total = _fsum(np.concatenate(acc_val + [ikk]))
        tol = max(abs_tol, rel_tol * abs(total))
        e_acc = math.fsum(np.concatenate(acc_err)) if acc_err else 0.0
        if e_acc + err.sum() <= tol:
            acc_val.append(ikk)
            acc_err.append(err)
            break
        budget = max(tol - e_acc, 0.0)
        order = np.argsort(err, kind="stable")
        keep_sorted = np.cumsum(err[order]) <= 0.5 * budget
        keep = np.zeros(len(err), bool)
        keep[order[keep_sorted]] = True
        if depth >= max_depth or ncells >= max_cells:
            keep[:] = True
            converged = False
        acc_val.append(ikk[keep])
        acc_err.append(err[keep])
        todo = ~keep
        active = _split(active[todo], eu[todo], ev[todo])
        depth += 1
    value = _fsum(np.concatenate(acc_val))
    err = math.fsum(np.concatenate(acc_err))
    tol = max(abs_tol, rel_tol * abs(value))
    return IntegrationResult(value, err, ncells, converged=converged and err <= tol)


def _cells_from_breaks(bu, bv):
    bu = np.unique(np.clip(np.asarray(bu, float), 0, 1))
    bv = np.unique(np.clip(np.asarray(bv, float), 0, 1))
    U0, V0 = np.meshgrid(bu[:-1], bv[:-1], indexing="ij")
    U1, V1 = np.meshgrid(bu[1:], bv[1:], indexing="ij")
    return np.stack([U0.ravel(), U1.ravel(), V0.ravel(), V1.ravel()], 1)


def _refine_cells(cells, bu, bv, window):
    """Cut cells overlapping ``window`` = (u0, u1, v0, v1) along extra breakpoints."""
    wu0, wu1, wv0, wv1 = window
    out = []
    for c in cells:
        if c[1] <= wu0 or c[0] >= wu1 or c[3] <= wv0 or c[2] >= wv1:
            out.append(c[None, :])
            continue
        iu = bu[(bu > c[0]) & (bu < c[1])]
        iv = bv[(bv > c[2]) & (bv < c[3])]
        gu = np.concatenate([[c[0]], iu, [c[1]]])
        gv = np.concatenate([[c[2]], iv, [c[3]]])
        out.append(_cells_from_breaks(gu, gv) if (len(iu) or len(iv)) else c[None, :])
    return np.concatenate(out, 0)


# --------------------------------------------------------------------------
# domain maps


def _hint_list(hints) -> list[complex]:
    out = []
    for h in hints or ():
        h = h.z if isinstance(h, HalfPlanePoint) else complex(h)
        if h.imag > 0:
            out.append(h)
    return out


def _geometric(center, scale, reach, ratio=4.0):
    pts = [center]
    d = scale / ratio
    while d < reach:
        pts += [center - d, center + d]
        d *= ratio
    return np.array(pts)


class _LogPolar:
    """z = exp(s + i phi), s in [ln r0, ln R], phi in [phi0(r), pi - phi0(r)]."""

    def __init__(self, r0, R, floor):
        self.s0, self.s1 = math.log(r0), math.log(R)
        self.S = self.s1 - self.s0
        self.floor = floor

    def __call__(self, f):
        s0, S, floor = self.s0, self.S, self.floor

        def F(u, v):
            r = np.exp(s0 + S * u)
            phi0 = np.arcsin(np.minimum(1.0, floor / r))
            width = np.pi - 2 * phi0
            phi = phi0 + width * v
            z = r * np.exp(1j * phi)
            return f(z) * (r * r * S * width)

        return F

    def cells(self, hints):
        n = max(1, int(math.ceil(self.S)))
        bu = np.linspace(0, 1, n + 1)
        dy = 2.0 ** -np.arange(1, 9)
        bv = np.concatenate([[0, 1], dy, 1 - dy])
        cells = _cells_from_breaks(bu, bv)
        for h in hints:
            r, delta = abs(h), h.imag
            if r < math.exp(self.s0) or r > math.exp(self.s1):
                continue
            uc = (math.log(r) - self.s0) / self.S
            if r > 4 * delta:
                ubr = _geometric(uc, delta / r / self.S, 1.0 / self.S)
                vc = math.atan2(h.imag, h.real) / math.pi
                vbr = _geometric(vc, delta / r / math.pi, 0.25)
                window = (uc - 1 / self.S, uc + 1 / self.S, vc - 0.25, vc + 0.25)
            else:
                ls = np.log(delta * 4.0 ** np.arange(-3, 4))
                ubr = (ls - self.s0) / self.S
                vbr = np.array([])
                window = (ubr[0], ubr[-1], 0.0, 1.0)
            cells = _refine_cells(cells, np.sort(ubr), np.sort(vbr), window)
        return cells


def _ball_F(ball: Ball, f):
    c, a = ball.center, ball.radius

    def F(u, v):
        rho = a * u
        z = c + rho * np.exp(2j * np.pi * v)
        return f(z) * (a * rho * 2 * np.pi)

    return F


_BALL_CELLS = _cells_from_breaks([0, 0.5, 1], [0, 0.25, 0.5, 0.75, 1])


def _rect_F(rect: Rect, f, floor):
    y0 = max(rect.y0, floor) if rect.y0 <= 0 else rect.y0
    dx, dy = rect.x1 - rect.x0, rect.y1 - y0

    def F(u, v):
        z = (rect.x0 + dx * u) + 1j * (y0 + dy * v)
        return f(z) * (dx * dy)

    bv = [0, 1] if rect.y0 > 0 else np.concatenate([[0, 1], 2.0 ** -np.arange(1, 12)])
    return F, _cells_from_breaks([0, 0.5, 1], bv)


def _cone_F(f, R, y_max):
    if y_max is not None:
        # x = t*y, t in [-1, 1], y in [1, y_max]
        def F(u, v):
            y = 1 + (y_max - 1) * v
            t = -1 + 2 * u
            return f(t * y + 1j * y) * (2 * (y_max - 1) * y)

        return F, _cells_from_breaks([0, 0.5, 1], [0, 1])
    sR = math.log(R)

    def F(u, v):
        phi = np.pi / 4 + (np.pi / 2) * v
        a = -np.log(np.sin(phi))
        S = sR - a
        r = np.exp(a + S * u)
        return f(r * np.exp(1j * phi)) * (r * r * S * (np.pi / 2))

    n = max(1, int(math.ceil(sR)))
    return F, _cells_from_breaks(np.linspace(0, 1, n + 1), [0, 0.5, 1])


# --------------------------------------------------------------------------
# tails


def _circle_samples(R, floor, n=257):
    t = np.linspace(0, 1, n)
    phi = 0.5 * np.pi * (1 - np.cos(np.pi * t))
    lo = max(floor / R, 1e-300)
    edge = lo * 10.0 ** np.arange(0, 8)
    phi = np.concatenate([phi[1:-1], edge, np.pi - edge])
    phi = phi[(phi > lo * 0.999) & (phi < np.pi)]
    return R * np.exp(1j * phi)


def tail_envelope(f, R: float, p: float, q: float = 0.0, floor: float = 1e-8) -> float:
    """Integral over |z| > R of the envelope C |z|^-p (1 + ln|z|)^q fitted on |z| = R."""
    m = float(np.max(np.abs(f(_circle_samples(R, floor)))))
    C = m * R ** p / (1 + math.log(R)) ** q
    if q == 0:
        tail = R ** (2 - p) / (p - 2)
    else:
        tail, _ = _sp_integrate.quad(lambda s: math.exp((2 - p) * s) * (1 + s) ** q,
                                     math.log(R), np.inf)
    return math.pi * C * tail


def tail_exponent(f, R: float, floor: float = 1e-8) -> float:
    """Empirical decay exponent of max |f| between |z| = R/4 and |z| = R."""
    a = float(np.max(np.abs(f(_circle_samples(R / 4, floor, 65)))))
    b = float(np.max(np.abs(f(_circle_samples(R, floor, 65)))))
    if a == 0 or b == 0:
        return math.inf
    return math.log(a / b) / math.log(4.0)


# --------------------------------------------------------------------------
# public entry points


def _finish(res: IntegrationResult, cfg: QuadConfig, what: str) -> IntegrationResult:
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(res.value))
    ok = res.converged and (not res.tail_rigorous or res.budget <= tol * (1 + 1e-9))
    res = replace(res, converged=ok)
    if not ok:
        raise ConvergenceError(
            f"{what}: tolerance {tol:.3g} not met (err {res.err_estimate:.3g}, "
            f"tail {res.tail_bound:.3g})", res)
    return res


def _integrate_balls(f: BallPieces, cfg: QuadConfig) -> IntegrationResult:
    out = IntegrationResult(0.0, 0.0, 0)
    for ball, g in f.pieces:
        gg = g if callable(g) else (lambda z, g=g: g * np.ones(np.shape(z)))
        out = out + adaptive_square(_ball_F(ball, gg), _BALL_CELLS, cfg.rel_tol,
                                    cfg.abs_tol, cfg.max_depth)
    return out


def integrate_halfplane(f, cfg: QuadConfig | None = None, hints: Sequence = (),
                        tail_log_power: float = 0.0, strict: bool = True) -> IntegrationResult:
    """Integrate ``f`` over {|z| < R, y > floor} in the upper half-plane.

    ``hints`` are points ``p`` where the integrand has structure at scale
    ``Im p`` (e.g. a kernel peaking below ``p``); they seed the mesh.  With
    ``cfg.tail_decay = p`` the neglected tail is bounded by a fitted envelope
    ``C |z|^-p (1 + ln|z|)^q`` (q = ``tail_log_power``) and the radius is grown
    by decades until that bound fits in half the budget.  Without it, the
    tail is only sampled and the bound is flagged non-rigorous.
    """
    cfg = cfg or QuadConfig()
    if isinstance(f, BallPieces):
        res = _integrate_balls(f, cfg)
        return _finish(res, cfg, "ball integral") if strict else res
    hl = _hint_list(hints)
    R = cfg.truncation_radius
    mp = _LogPolar(cfg.boundary_floor, R, cfg.boundary_floor)
    # with a bounded tail, cubature gets half the budget and the tail the other half
    rt, at = (cfg.rel_tol, cfg.abs_tol) if cfg.tail_decay is None else (
        0.5 * cfg.rel_tol, 0.5 * cfg.abs_tol)
    res = adaptive_square(mp(f), mp.cells(hl), rt, at, cfg.max_depth)
    if cfg.tail_decay is not None:
        p = cfg.tail_decay
        while True:
            T = tail_envelope(f, R, p, tail_log_power, cfg.boundary_floor)
            tol = max(cfg.abs_tol, cfg.rel_tol * abs(res.value))
            if T <= 0.5 * tol or R >= 1e15:
                break
            ann = _LogPolar(R, 10 * R, cfg.boundary_floor)
            res = res + adaptive_square(ann(f), ann.cells(hl), rt,
                                        max(at, 0.25 * rt * abs(res.value)), cfg.max_depth)
            R *= 10
        res = replace(res, tail_bound=T, radius=R, tail_rigorous=True,
                      tail_exponent=tail_exponent(f, R, cfg.boundary_floor))
    else:
        m = float(np.max(np.abs(f(_circle_samples(R, cfg.boundary_floor, 65)))))
        res = replace(res, tail_bound=math.pi * R * R * m, radius=R, tail_rigorous=False,
                      tail_exponent=tail_exponent(f, R, cfg.boundary_floor))
    return _finish(res, cfg, "half-plane integral") if strict else res


def integrate_region(f, region, cfg: QuadConfig | None = None, hints: Sequence = (),
                     strict: bool = True) -> IntegrationResult:
    """Integrate ``f`` over a region, clipped to |z| < R for unbounded ones."""
    cfg = cfg or QuadConfig()
    tol = (cfg.rel_tol, cfg.abs_tol, cfg.max_depth)
    if isinstance(region, Ball):
        if not region.inside_halfplane:
            raise DomainError("ball must lie inside the open half-plane")
        res = adaptive_square(_ball_F(region, f), _BALL_CELLS, *tol)
    elif isinstance(region, (Rect, CarlesonSquare, Shell)):
        rects = region.rects() if isinstance(region, Shell) else (
            [region.rect()] if isinstance(region, CarlesonSquare) else [region])
        res = IntegrationResult(0.0, 0.0, 0)
        for r in rects:
            F, cells = _rect_F(r, f, cfg.boundary_floor)
            res = res + adaptive_square(F, cells, *tol)
    elif isinstance(region, Cone):
        F, cells = _cone_F(f, cfg.truncation_radius, region.y_max)
        res = adaptive_square(F, cells, *tol)
    elif isinstance(region, HalfDisc):
        sub = cfg.with_(truncation_radius=max(region.R, 10.0), tail_decay=None)
        mp = _LogPolar(sub.boundary_floor, region.R, sub.boundary_floor)
        res = adaptive_square(mp(f), mp.cells(_hint_list(hints)), *tol)
    else:
        raise TypeError(f"unsupported region {region!r}")
    return _finish(res, cfg, f"integral over {type(region).__name__}") if strict else res


def ball_rule(ball: Ball, n_r: int = 16, n_t: int = 32):
    """Fixed polar product rule on a ball: (nodes, weights) for vectorised use."""
    x, w = np.polynomial.legendre.leggauss(n_r)
    rho = 0.5 * ball.radius * (x + 1)
    wr = 0.5 * ball.radius * w * rho
    t = 2 * np.pi * np.arange(n_t) / n_t
    nodes = ball.center + rho[:, None] * np.exp(1j * t)[None, :]
    weights = wr[:, None] * np.full(n_t, 2 * np.pi / n_t)[None, :]
    return nodes.ravel(), weights.ravel()
