"""Closed-form test functions: atoms, theta_w and its powers, critical Bloch
examples, cubic kernels and rational symbols.

Each function is vectorised over complex arrays and (when holomorphic) carries
an exact derivative.  ``decay = (p, q)`` records the envelope
``|f(z)| <~ |z|^-p (1 + ln|z|)^q`` at infinity; ``hints`` lists points where
the function has structure at scale ``Im p``.  Both only steer quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .halfplane import Ball, DomainError, as_complex, omega
from .quadrature import BallPieces


class UnsupportedKindError(TypeError):
    pass


def _dprofile(p, q):
    # envelope of the derivative of a function with envelope (p, q)
    return (p + 1, q) if p > 0 else (1.0, q - 1)


class ModelFunction:
    holomorphic = True
    decay: tuple[float, float] = (0.0, 0.0)

    def __call__(self, z):
        return self.eval(as_complex(z))

    def eval(self, z):
        raise NotImplementedError

    def deriv(self, z):
        raise UnsupportedKindError(f"{type(self).__name__} has no derivative")

    def hints(self) -> list[complex]:
        return []

    @property
    def ddecay(self):
        return _dprofile(*self.decay)

    def __add__(self, other):
        return Sum(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Sum(self, Scaled(_lift(other), -1.0))

    def __neg__(self):
        return Scaled(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, ModelFunction):
            return Product(self, other)
        return Scaled(self, complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ModelFunction):
            return Quotient(self, other)
        return Scaled(self, 1.0 / complex(other))


def _lift(x):
    return x if isinstance(x, ModelFunction) else Constant(complex(x))


def eval(f: ModelFunction, z):
    out = f(z)
    return complex(out) if np.ndim(out) == 0 else out


def derivative(f: ModelFunction, z):
    if not f.holomorphic:
        raise UnsupportedKindError(f"{type(f).__name__} is not holomorphic")
    out = f.deriv(as_complex(z))
    return complex(out) if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------
# combinators


@dataclass(frozen=True, eq=False)
class Constant(ModelFunction):
    c: complex = 1.0

    def eval(self, z):
        return np.full(np.shape(z), complex(self.c))

    def deriv(self, z):
        return np.zeros(np.shape(z), dtype=complex)


@dataclass(frozen=True, eq=False)
class Scaled(ModelFunction):
    f: ModelFunction
    c: complex

    @property
    def holomorphic(self):
        return self.f.holomorphic

    @property
    def decay(self):
        return self.f.decay

    def eval(self, z):
        return self.c * self.f.eval(z)

    def deriv(self, z):
        return self.c * self.f.deriv(z)

    def hints(self):
        return self.f.hints()


@dataclass(frozen=True, eq=False)
class Sum(ModelFunction):
    f: ModelFunction
    g: ModelFunction

    @property
    def holomorphic(self):
        return self.f.holomorphic and self.g.holomorphic

    @property
    def decay(self):
        return min(self.f.decay, self.g.decay)

    def eval(self, z):
        return self.f.eval(z) + self.g.eval(z)

    def deriv(self, z):
        return self.f.deriv(z) + self.g.deriv(z)

    def hints(self):
        return self.f.hints() + self.g.hints()


@dataclass(frozen=True, eq=False)
class Product(ModelFunction):
    f: ModelFunction
    g: ModelFunction

    @property
    def holomorphic(self):
        return self.f.holomorphic and self.g.holomorphic

    @property
    def decay(self):
        (p1, q1), (p2, q2) = self.f.decay, self.g.decay
        return (p1 + p2, q1 + q2)

    def eval(self, z):
        return self.f.eval(z) * self.g.eval(z)

    def deriv(self, z):
        return self.f.deriv(z) * self.g.eval(z) + self.f.eval(z) * self.g.deriv(z)

    def hints(self):
        return self.f.hints() + self.g.hints()


@dataclass(frozen=True, eq=False)
class Quotient(ModelFunction):
    f: ModelFunction
    g: ModelFunction

    @property
    def holomorphic(self):
        return self.f.holomorphic and self.g.holomorphic

    @property
    def decay(self):
        (p1, q1), (p2, q2) = self.f.decay, self.g.decay
        return (p1 - p2, q1 - q2)

    def eval(self, z):
        return self.f.eval(z) / self.g.eval(z)

    def deriv(self, z):
        g = self.g.eval(z)
        return (self.f.deriv(z) * g - self.f.eval(z) * self.g.deriv(z)) / (g * g)

    def hints(self):
        return self.f.hints() + self.g.hints()


# --------------------------------------------------------------------------
# the fixed vocabulary


@dataclass(frozen=True, eq=False)
class AtomFZeta(ModelFunction):
    """4/(pi lam^2) 1_{B(zeta, lam/2)} - 4/pi 1_{B(i, 1/2)}, lam = Im zeta."""

    zeta: complex
    holomorphic = False
    decay = (math.inf, 0.0)

    def __post_init__(self):
        z = complex(as_complex(self.zeta))
        object.__setattr__(self, "zeta", z)
        if not abs(z - 1j) > 1:
            raise DomainError(f"atom needs |zeta - i| > 1, got zeta={z}")

    @property
    def lam(self) -> float:
        return self.zeta.imag

    def pieces(self) -> BallPieces:
        lam = self.lam
        return BallPieces([
            (Ball(self.zeta, lam / 2), 4 / (math.pi * lam * lam)),
            (Ball(1j, 0.5), -4 / math.pi),
        ])

    def eval(self, z):
        return self.pieces()(z)

    def hints(self):
        return [self.zeta, 1j]


@dataclass(frozen=True, eq=False)
class WeightedAtom(ModelFunction):
    """(Im w) omega(w)^(1-(l+k)) / (z - conj(w))^3."""

    w: complex
    l: float = 0.0
    k: float = 0.0
    decay = (3.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "w", complex(as_complex(self.w)))

    @property
    def coef(self) -> float:
        return self.w.imag * float(omega(self.w)) ** (1 - (self.l + self.k))

    def eval(self, z):
        return self.coef / (z - np.conj(self.w)) ** 3

    def deriv(self, z):
        return -3 * self.coef / (z - np.conj(self.w)) ** 4

    def hints(self):
        return [self.w]


@dataclass(frozen=True, eq=False)
class Theta(ModelFunction):
    """1 - log(z - conj(w)) + ln|i + w| + 2 log(i + z)."""

    w: complex = 1j
    decay = (0.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "w", complex(as_complex(self.w)))

    def eval(self, z):
        w = self.w
        th = 1 - np.log(z - np.conj(w)) + math.log(abs(1j + w)) + 2 * np.log(1j + z)
        # principal powers and logs of theta rely on this margin
        assert np.all(th.real > 1 - math.log(2) + np.log(np.abs(1j + z)) - 1e-9)
        return th

    def deriv(self, z):
        return -1 / (z - np.conj(self.w)) + 2 / (1j + z)

    def hints(self):
        return [self.w]


@dataclass(frozen=True, eq=False)
class ThetaPower(ModelFunction):
    """theta_w^(1-k), principal branch."""

    w: complex = 1j
    k: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "w", complex(as_complex(self.w)))

    @property
    def theta(self) -> Theta:
        return Theta(self.w)

    @property
    def decay(self):
        return (0.0, 1 - self.k)

    def eval(self, z):
        return np.exp((1 - self.k) * np.log(self.theta.eval(z)))

    def deriv(self, z):
        th = self.theta
        return (1 - self.k) * np.exp(-self.k * np.log(th.eval(z))) * th.deriv(z)

    def hints(self):
        return [self.w]


@dataclass(frozen=True, eq=False)
class LogTheta(ModelFunction):
    w: complex = 1j
    decay = (0.0, 0.5)

    def __post_init__(self):
        object.__setattr__(self, "w", complex(as_complex(self.w)))

    def eval(self, z):
        return np.log(Theta(self.w).eval(z))

    def deriv(self, z):
        th = Theta(self.w)
        return th.deriv(z) / th.eval(z)

    def hints(self):
        return [self.w]


@dataclass(frozen=True, eq=False)
class CriticalExample(ModelFunction):
    """1 (k > 1), log log(4i + z) (k = 1), log(4i + z)^(1-k) (k < 1)."""

    k: float

    @property
    def decay(self):
        if self.k > 1:
            return (0.0, 0.0)
        return (0.0, 0.5) if self.k == 1 else (0.0, 1 - self.k)

    def eval(self, z):
        if self.k > 1:
            return np.ones(np.shape(z), dtype=complex)
        L = np.log(4j + z)
        if self.k == 1:
            return np.log(L)
        return np.exp((1 - self.k) * np.log(L))

    def deriv(self, z):
        if self.k > 1:
            return np.zeros(np.shape(z), dtype=complex)
        L = np.log(4j + z)
        if self.k == 1:
            return 1 / (L * (4j + z))
        return (1 - self.k) * np.exp(-self.k * np.log(L)) / (4j + z)


@dataclass(frozen=True, eq=False)
class CubicKernel(ModelFunction):
    """scale * (z - conj(zeta0))^-3."""

    zeta0: complex
    scale: complex = 1.0
    decay = (3.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "zeta0", complex(as_complex(self.zeta0)))

    def eval(self, z):
        return self.scale / (z - np.conj(self.zeta0)) ** 3

    def deriv(self, z):
        return -3 * self.scale / (z - np.conj(self.zeta0)) ** 4

    def hints(self):
        return [self.zeta0]


@dataclass(frozen=True, eq=False)
class RationalSymbol(ModelFunction):
    """(z + i)^-n."""

    n: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("n must be a positive integer")

    @property
    def decay(self):
        return (float(self.n), 0.0)

    def eval(self, z):
        return (z + 1j) ** (-self.n)

    def deriv(self, z):
        return -self.n * (z + 1j) ** (-self.n - 1)

    def hints(self):
        return [1j]


@dataclass(frozen=True, eq=False)
class LogShift(ModelFunction):
    """log(z + i a); a Bloch function that is not in the log-weighted Bloch space."""

    a: float = 1.0
    decay = (0.0, 1.0)

    def eval(self, z):
        return np.log(z + 1j * self.a)

    def deriv(self, z):
        return 1 / (z + 1j * self.a)


def atom_projection_closed_form(zeta, z):
    """(1/pi) [(z - conj(zeta))^-2 - (z + i)^-2], the projection of the atom."""
    zeta, z = complex(as_complex(zeta)), as_complex(z)
    if not abs(zeta - 1j) > 1:
        raise DomainError("needs |zeta - i| > 1")
    out = ((z - np.conj(zeta)) ** -2 - (z + 1j) ** -2) / math.pi
    return complex(out) if np.ndim(out) == 0 else out
