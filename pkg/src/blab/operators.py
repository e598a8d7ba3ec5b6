"""Projections, Hankel operators, pairings and weighted norms.

Integral operators are evaluated by half-plane quadrature.  Two exact side
routes exist and are used as independent checks or to make nested integrals
affordable:

* ball-supported inputs (atoms, bumps) have closed-form ``P`` and ``P+``
  images via the mean value property;
* for the symbol ``b = (z + i)^-1`` Stokes' theorem collapses
  ``<b, H> = int b conj(H) dV`` to ``pi * conj(int_i^{i oo} H(t) dt)`` for any
  ``H`` holomorphic on the closed half-plane with ``|H| = O(|t|^-2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import functions as mf
from .halfplane import Ball, OmegaPow, as_complex, omega
from .kernels import calibrated
from .quadrature import (
    BallPieces,
    ConvergenceError,
    IntegrationResult,
    QuadConfig,
    ball_rule,
    integrate_halfplane,
)
from .search import SupResult, sup_search

# --------------------------------------------------------------------------
# kinds


@dataclass(frozen=True)
class P:
    alpha: float = 0.0


@dataclass(frozen=True)
class PPlus:
    alpha = 0.0


@dataclass(frozen=True)
class PMod:
    alpha = 0.0


@dataclass(frozen=True)
class PPlusMod:
    alpha = 0.0


@dataclass(frozen=True)
class WeightedL1:
    k: float = 0.0
    alpha: float = 0.0


@dataclass(frozen=True)
class BlochSemi:
    k: float = 0.0


@dataclass(frozen=True)
class BlochFull:
    k: float = 0.0


@dataclass(frozen=True)
class HInftyOmega:
    k: float = 0.0


@dataclass(frozen=True)
class LInftyWeighted:
    k: float = 0.0
    alpha: float = 0.0


@dataclass(frozen=True)
class NormResult:
    value: float
    witness: complex | None = None
    on_hull: bool = False
    err_estimate: float = 0.0


def _tail_cfg(cfg: QuadConfig, p: float, q: float = 0.0):
    """Config with an analytic tail when the envelope is integrable."""
    if p > 2.05 and math.isfinite(p):
        return cfg.with_(tail_decay=p), q
    return cfg.with_(tail_decay=None), q


def _decay(f):
    return getattr(f, "decay", (0.0, 0.0))


def _hints(f):
    return list(f.hints()) if hasattr(f, "hints") else []


# --------------------------------------------------------------------------
# kernels as plain functions of (z, zeta)


def _kernel(kind, c, z, zeta):
    if isinstance(kind, P):
        a = kind.alpha
        return c * (z - np.conj(zeta)) ** (-2.0 - a) if a else c / (z - np.conj(zeta)) ** 2
    k = c / (z - np.conj(zeta)) ** 2
    ki = c / (z + 1j) ** 2
    if isinstance(kind, PPlus):
        return np.abs(k)
    if isinstance(kind, PMod):
        return k - ki
    if isinstance(kind, PPlusMod):
        return np.abs(k) - np.abs(ki)
    raise TypeError(f"unknown projection kind {kind!r}")


def ball_projection(ball: Ball, z, c0: complex | None = None):
    """P(1_B)(z) = c0 * area(B) / (z - conj(center))^2 (mean value property)."""
    c0 = calibrated(0.0) if c0 is None else c0
    return c0 * ball.area / (as_complex(z) - np.conj(ball.center)) ** 2


def ball_pplus(ball: Ball, z, c0: complex | None = None):
    """P+(1_B)(z) = |c0| pi ln(d^2 / (d^2 - a^2)), d = |z - conj(center)|."""
    c0 = calibrated(0.0) if c0 is None else c0
    d2 = np.abs(as_complex(z) - np.conj(ball.center)) ** 2
    return -abs(c0) * math.pi * np.log1p(-ball.radius ** 2 / d2)


def project_closed_form(kind, f, z, c0=None):
    """Exact P / P+ / PMod / PPlusMod image of a ball-supported function."""
    pieces = f.pieces() if isinstance(f, mf.AtomFZeta) else f
    if not isinstance(pieces, BallPieces) or any(callable(g) for _, g in pieces.pieces):
        raise TypeError("closed form needs piecewise-constant ball data")
    z = as_complex(z)
    c0 = calibrated(0.0) if c0 is None else c0
    if isinstance(kind, P) and kind.alpha:
        raise TypeError("closed form only for alpha = 0")
    plus = isinstance(kind, (PPlus, PPlusMod))
    out = 0.0
    mass = 0.0
    for ball, g in pieces.pieces:
        img = ball_pplus(ball, z, c0) if plus else ball_projection(ball, z, c0)
        out = out + g * img
        mass += g * ball.area
    if isinstance(kind, PMod):
        out = out - mass * c0 / (z + 1j) ** 2
    elif isinstance(kind, PPlusMod):
        out = out - mass * abs(c0) / np.abs(z + 1j) ** 2
    return out


def _project_balls(kind, pieces: BallPieces, z, c):
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=complex)
    alpha = getattr(kind, "alpha", 0.0)
    for ball, g in pieces.pieces:
        nodes, w = ball_rule(ball)
        vals = g(nodes) if callable(g) else g
        w = w * vals * (nodes.imag ** alpha if alpha else 1.0)
        out += _kernel(kind, c, z[..., None], nodes) @ w
    return out


def project(kind, f, z, cfg: QuadConfig | None = None, full: bool = False):
    """Value of the projection ``kind`` of ``f`` at ``z`` (scalar or array).

    Ball-supported ``f`` use a fixed polar rule on each ball (vectorised over
    ``z``); everything else is one half-plane quadrature per point.  With
    ``full=True`` and scalar ``z`` the IntegrationResult is returned.
    """
    cfg = cfg or QuadConfig()
    alpha = getattr(kind, "alpha", 0.0)
    c = calibrated(alpha)
    zc = as_complex(z)
    if isinstance(f, (mf.AtomFZeta, BallPieces)):
        pieces = f.pieces() if isinstance(f, mf.AtomFZeta) else f
        out = _project_balls(kind, pieces, zc, c)
        return complex(out) if np.ndim(out) == 0 else out
    pf, qf = _decay(f)
    p = pf if isinstance(kind, (PMod, PPlusMod)) else pf + 2
    tcfg, q = _tail_cfg(cfg, p, qf)

    def one(z0):
        def integrand(zeta):
            v = _kernel(kind, c, z0, zeta) * f(zeta)
            return v * zeta.imag ** alpha if alpha else v

        return integrate_halfplane(integrand, tcfg, hints=_hints(f) + [z0], tail_log_power=q)

    if np.ndim(zc) == 0:
        res = one(zc)
        return res if full else complex(res.value)
    return np.array([one(z0).value for z0 in zc.ravel()]).reshape(zc.shape)


# --------------------------------------------------------------------------
# norms and pairings


def weighted_l1_norm(f, k: float = 0.0, alpha: float = 0.0, cfg: QuadConfig | None = None,
                     hints=(), decay=None) -> IntegrationResult:
    """Integral of |f| omega^k y^alpha over the half-plane."""
    cfg = cfg or QuadConfig()
    if isinstance(f, (mf.AtomFZeta, BallPieces)):
        pieces = f.pieces() if isinstance(f, mf.AtomFZeta) else f
        wk = OmegaPow(k)
        g = pieces.abs().map(lambda v, z: v * wk(z) * (z.imag ** alpha if alpha else 1.0))
        return integrate_halfplane(g, cfg)
    pf, qf = decay if decay is not None else _decay(f)
    tcfg, q = _tail_cfg(cfg, pf - alpha, qf + max(k, 0.0))
    wk = OmegaPow(k)

    def integrand(z):
        v = np.abs(f(z))
        if k:
            v = v * wk(z)
        return v * z.imag ** alpha if alpha else v

    return integrate_halfplane(integrand, tcfg, hints=list(hints) + _hints(f), tail_log_power=q)


def _bloch_objective(f, k):
    wk = OmegaPow(k)
    return lambda z: z.imag * wk(z) * np.abs(f.deriv(z))


def norm(kind, f, cfg: QuadConfig | None = None, hints=(), density: int = 2) -> NormResult:
    """Sup-type (and weighted L1) norms; sup norms are lower bounds from search."""
    cfg = cfg or QuadConfig()
    hl = list(hints) + _hints(f)
    if isinstance(kind, WeightedL1):
        res = weighted_l1_norm(f, kind.k, kind.alpha, cfg, hints)
        return NormResult(float(res.value), None, False, res.budget)
    if isinstance(kind, (BlochSemi, BlochFull)):
        if not f.holomorphic:
            raise mf.UnsupportedKindError("Bloch norms need a holomorphic function")
        s: SupResult = sup_search(_bloch_objective(f, kind.k), cfg, hints=hl, density=density)
        val = s.sup + (abs(complex(f(1j))) if isinstance(kind, BlochFull) else 0.0)
        return NormResult(val, s.witness, s.on_hull)
    if isinstance(kind, HInftyOmega):
        wk = OmegaPow(kind.k)
        s = sup_search(lambda z: np.abs(f(z)) * wk(z), cfg, hints=hl, density=density)
        return NormResult(s.sup, s.witness, s.on_hull)
    if isinstance(kind, LInftyWeighted):
        wk = OmegaPow(kind.k)
        a = kind.alpha
        s = sup_search(lambda z: z.imag ** a * wk(z) * np.abs(f(z)), cfg, hints=hl, density=density)
        return NormResult(s.sup, s.witness, s.on_hull)
    raise TypeError(f"unknown norm kind {kind!r}")


def duality_pair(f, g, cfg: QuadConfig | None = None) -> IntegrationResult:
    """<f, g>_* = int f conj(g') y dV."""
    cfg = cfg or QuadConfig()
    if isinstance(g, mf.Constant):
        return IntegrationResult(0j, 0.0, 0)
    (pf, qf), (pg, qg) = _decay(f), g.ddecay
    tcfg, q = _tail_cfg(cfg, pf + pg - 1, qf + qg)

    def integrand(z):
        return f(z) * np.conj(g.deriv(z)) * z.imag

    return integrate_halfplane(integrand, tcfg, hints=_hints(f) + _hints(g), tail_log_power=q)


def l2_pair(b, f, cfg: QuadConfig | None = None, strict: bool = True) -> IntegrationResult:
    """<b, f> = int b conj(f) dV.  ``tail_exponent < 2.5`` marks marginal convergence."""
    cfg = cfg or QuadConfig()
    (pb, qb), (pf, qf) = _decay(b), _decay(f)
    tcfg, q = _tail_cfg(cfg, pb + pf, qb + qf)

    def integrand(z):
        return b(z) * np.conj(f(z))

    return integrate_halfplane(integrand, tcfg, hints=_hints(b) + _hints(f), tail_log_power=q,
                               strict=strict)


def is_marginal(res: IntegrationResult) -> bool:
    return res.tail_exponent < 2.5


def hankel_apply(b, f, z, cfg: QuadConfig | None = None, modified: bool = False,
                 full: bool = False):
    """h_b f(z) = int K(z, zeta) b(zeta) conj(f(zeta)) dV(zeta) (K_mod if modified)."""
    cfg = cfg or QuadConfig()
    c = calibrated(0.0)
    kind = PMod() if modified else P(0.0)
    (pb, qb), (pf, qf) = _decay(b), _decay(f)
    p = pb + pf + (0 if modified else 2)
    tcfg, q = _tail_cfg(cfg, p, qb + qf)

    def one(z0):
        def integrand(zeta):
            return _kernel(kind, c, z0, zeta) * b(zeta) * np.conj(f(zeta))

        return integrate_halfplane(integrand, tcfg, hints=_hints(b) + _hints(f) + [z0],
                                   tail_log_power=q)

    zc = as_complex(z)
    if np.ndim(zc) == 0:
        res = one(zc)
        return res if full else complex(res.value)
    return np.array([one(z0).value for z0 in zc.ravel()]).reshape(zc.shape)


# --------------------------------------------------------------------------
# the (z + i)^-1 contour route


def _imag_axis_rule(tau_max: float = 40.0, n: int = 12):
    x, w = np.polynomial.legendre.leggauss(n)
    edges = np.arange(0.0, tau_max + 1.0)
    a, b = edges[:-1], edges[1:]
    tau = (0.5 * (a + b))[:, None] + 0.5 * (b - a)[:, None] * x[None, :]
    wt = 0.5 * (b - a)[:, None] * w[None, :]
    t = 1j * np.exp(tau.ravel())
    return t, (wt.ravel() * 1j * np.exp(tau.ravel()))


_AXIS_T, _AXIS_W = _imag_axis_rule()


def axis_integral(H, z=None):
    """int_i^{i oo} H(t) dt (or H(t, z) for an array of z) by Gauss on t = i e^tau."""
    if z is None:
        return complex(np.sum(H(_AXIS_T) * _AXIS_W))
    z = np.asarray(z, dtype=complex)
    return (H(_AXIS_T[None, :], z[..., None]) * _AXIS_W).sum(-1)


def l2_pair_symbol(f) -> complex:
    """<(z + i)^-1, f> for holomorphic f with |f| = O(|z|^-2)."""
    return complex(math.pi * np.conj(axis_integral(f)))


def hankel_symbol(f, z, modified: bool = False, c0: complex | None = None):
    """h_b f(z) for b = (z + i)^-1 via the contour identity, vectorised in z.

    h_b f(z) = c0 <b, f (. - conj z)^-2>; the modified operator subtracts
    c0 <b, f> / (z + i)^2.
    """
    c0 = calibrated(0.0) if c0 is None else c0
    z = as_complex(z)
    inner = axis_integral(lambda t, zz: f(t) * (t - np.conj(zz)) ** -2, np.atleast_1d(z))
    out = c0 * math.pi * np.conj(inner)
    if modified:
        out = out - c0 * l2_pair_symbol(f) / (np.atleast_1d(z) + 1j) ** 2
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def moment_free_part(f0, zetas=(1 + 1j, -1 + 1j)):
    """f0 minus cubic kernels at ``zetas`` so that <b, z^j f> = 0 for j < len(zetas).

    Only for b = (z + i)^-1, where both brackets have the contour form.  With
    j = 0 this is membership in A^1_b; j = 1 also removes the z^-3 term of
    h_b f at infinity, so truncated norms of h_b f settle quickly.
    """
    def moments(f):
        return np.array([math.pi * np.conj(axis_integral(lambda t, j=j: t ** j * f(t)))
                         for j in range(len(zetas))])

    us = [mf.CubicKernel(z) for z in zetas]
    coef = np.linalg.solve(np.array([moments(u) for u in us]).T, moments(f0))
    out = f0
    for u, c in zip(us, coef):
        out = out - u * np.conj(c)
    return out


def cauchy_pair(b, zeta0) -> complex:
    """<b, (. - conj zeta0)^-3> = b'(zeta0) / (2 c0), the Cauchy formula for b'."""
    return complex(b.deriv(np.asarray(complex(zeta0)))) / (2 * calibrated(0.0))


def orthogonalizer(b, zeta0) -> mf.CubicKernel:
    """u = s (z - conj zeta0)^-3 with <b, u> = 1."""
    m = cauchy_pair(b, zeta0)
    return mf.CubicKernel(zeta0, 1 / np.conj(m))


def orthogonal_part(b, f0, zeta0, pair: complex | None = None):
    """f0 - conj(<b, f0>) u, which satisfies <b, f> = 0 (pairing is antilinear in f)."""
    u = orthogonalizer(b, zeta0)
    if pair is None:
        pair = l2_pair(b, f0).value
    return f0 - u * np.conj(pair)


def hankel_test_atom(zeta) -> mf.CubicKernel:
    """Im(zeta) omega(zeta) / (pi (z - conj zeta)^3), the reverse-estimate probe."""
    zeta = complex(zeta)
    return mf.CubicKernel(zeta, zeta.imag * float(omega(zeta)) / math.pi)


__all__ = [
    "P", "PPlus", "PMod", "PPlusMod", "WeightedL1", "BlochSemi", "BlochFull", "HInftyOmega",
    "LInftyWeighted", "NormResult", "project", "project_closed_form", "ball_projection",
    "ball_pplus", "weighted_l1_norm", "norm", "duality_pair", "l2_pair", "is_marginal",
    "hankel_apply", "hankel_symbol", "l2_pair_symbol", "axis_integral", "cauchy_pair",
    "orthogonalizer", "orthogonal_part", "moment_free_part", "hankel_test_atom", "ConvergenceError",
]
