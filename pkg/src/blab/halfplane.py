"""Points, weights and regions of the upper half-plane.

Everything downstream evaluates on complex numpy arrays; :class:`HalfPlanePoint`
is the validated scalar form used in public signatures.  Helpers accept either.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

E = math.e


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


@dataclass(frozen=True)
class HalfPlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"non-finite point ({self.x}, {self.y})")
        if self.y <= 0:
            raise DomainError(f"point must have y > 0, got y={self.y}")

    @classmethod
    def of(cls, z: complex) -> "HalfPlanePoint":
        z = complex(z)
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def modulus(self) -> float:
        return math.hypot(self.x, self.y)

    def __complex__(self):
        return self.z


PointLike = Union[HalfPlanePoint, complex, float, np.ndarray]


def as_complex(z) -> np.ndarray | complex:
    """Return `z` as a complex scalar or array, rejecting points with y <= 0."""
    if isinstance(z, HalfPlanePoint):
        return z.z
    if np.isscalar(z):
        z = complex(z)
        if not z.imag > 0:
            raise DomainError(f"point must have y > 0, got {z}")
        return z
    z = np.asarray(z, dtype=complex)
    if z.size and not np.all(z.imag > 0):
        raise DomainError("all points must have y > 0")
    return z


def ln_plus(t: float) -> float:
    """max(ln t, 0) for t > 0."""
    if not t > 0:
        raise DomainError(f"ln_plus needs t > 0, got {t}")
    return max(math.log(t), 0.0)


def lnp(t):
    # vectorised ln_+, with ln_+(0) = 0 so that ln_+(ln_+(.)) is total
    return np.log(np.maximum(t, 1.0))


# --------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class OmegaPow:
    """omega(z)^k with omega = 1 + ln_+(1/y) + ln_+|z|."""

    k: float = 1.0

    def __call__(self, z):
        z = as_complex(z)
        om = 1.0 + lnp(1.0 / np.imag(z)) + lnp(np.abs(z))
        return om if self.k == 1 else om ** self.k


@dataclass(frozen=True)
class GeneralWeight:
    """The four-switch weight family of the Forelli-Rudin type estimate.

    ``(ln^e1(e+|z|) + ln^e2(e+1/y))^k * ln(e + ln^e3(e+|z|) + ln^e4(e+1/y))^s``
    """

    eps: tuple[int, int, int, int] = (1, 1, 0, 0)
    k: float = 1.0
    s: float = 0.0

    def __post_init__(self):
        if len(self.eps) != 4 or any(e not in (0, 1) for e in self.eps):
            raise DomainError(f"switches must be four 0/1 values, got {self.eps}")

    def __call__(self, z):
        z = as_complex(z)
        a = np.log(E + np.abs(z))
        b = np.log(E + 1.0 / np.imag(z))
        e1, e2, e3, e4 = self.eps
        base = (a if e1 else 1.0) + (b if e2 else 1.0)
        out = base ** self.k
        if self.s:
            inner = np.log(E + (a if e3 else 1.0) + (b if e4 else 1.0))
            out = out * inner ** self.s
        return out * np.ones(np.shape(z))


@dataclass(frozen=True)
class Rho:
    """(1 + ln(e + 1/y))^(-k)."""

    k: float = 1.0

    def __call__(self, z):
        z = as_complex(z)
        return (1.0 + np.log(E + 1.0 / np.imag(z))) ** (-self.k)


@dataclass(frozen=True)
class LogLog:
    """1 + ln_+ ln_+(1/y) + ln_+ ln_+|z|."""

    def __call__(self, z):
        z = as_complex(z)
        return 1.0 + lnp(lnp(1.0 / np.imag(z))) + lnp(lnp(np.abs(z)))


WeightSpec = Union[OmegaPow, GeneralWeight, Rho, LogLog]

#: the two single-sided weights ln(e + 1/y) and ln(e + |z|)
OMEGA_1 = GeneralWeight((0, 1, 0, 0), 1.0, 0.0)
OMEGA_2 = GeneralWeight((1, 0, 0, 0), 1.0, 0.0)


def eval_weight(w: WeightSpec, z):
    out = w(z)
    return float(out) if np.ndim(out) == 0 else out


def omega(z):
    return OmegaPow(1.0)(z)


def log_power_integral(k: float, t: float) -> float:
    """Closed form of the integral of (ln s)^k / s over [2, t]."""
    if not t >= 2:
        raise DomainError(f"log_power_integral needs t >= 2, got {t}")
    a, b = math.log(2.0), math.log(t)
    if k == -1:
        return math.log(b) - math.log(a)
    return (b ** (k + 1) - a ** (k + 1)) / (k + 1)


# --------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class Ball:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise DomainError("ball radius must be positive")

    def contains(self, z):
        return np.abs(np.asarray(z) - self.center) <= self.radius

    @property
    def inside_halfplane(self) -> bool:
        return self.radius < self.center.imag

    @property
    def area(self) -> float:
        return math.pi * self.radius ** 2


@dataclass(frozen=True)
class Rect:
    """Axis-parallel box [x0, x1] x [y0, y1] (y0 may be 0)."""

    x0: float
    x1: float
    y0: float
    y1: float

    def contains(self, z):
        z = np.asarray(z)
        return (z.real >= self.x0) & (z.real <= self.x1) & (z.imag > self.y0) & (z.imag <= self.y1)

    @property
    def area(self) -> float:
        return (self.x1 - self.x0) * (self.y1 - self.y0)


@dataclass(frozen=True)
class CarlesonSquare:
    """Q_w = (u - v, u + v) x (0, 2v) for w = u + iv."""

    w: complex

    def __post_init__(self):
        object.__setattr__(self, "w", as_complex(self.w))

    def rect(self) -> Rect:
        u, v = self.w.real, self.w.imag
        return Rect(u - v, u + v, 0.0, 2 * v)

    def contains(self, z):
        return self.rect().contains(z)

    @property
    def area(self) -> float:
        return self.rect().area


@dataclass(frozen=True)
class Shell:
    """Q_{w_j} minus Q_{w_{j-1}}, w_j = u + i 2^j v; Shell(w, 0) = Q_w."""

    w: complex
    j: int

    def __post_init__(self):
        object.__setattr__(self, "w", as_complex(self.w))
        if self.j < 0:
            raise DomainError("shell index must be >= 0")

    def wj(self, j: int) -> complex:
        return complex(self.w.real, 2.0 ** j * self.w.imag)

    def rects(self) -> list[Rect]:
        outer = CarlesonSquare(self.wj(self.j)).rect()
        if self.j == 0:
            return [outer]
        u, big = self.w.real, self.wj(self.j).imag
        half = big / 2
        return [
            Rect(u - big, u + big, big, 2 * big),
            Rect(u - big, u - half, 0.0, big),
            Rect(u + half, u + big, 0.0, big),
        ]

    def contains(self, z):
        inner = CarlesonSquare(self.wj(self.j - 1)) if self.j else None
        out = CarlesonSquare(self.wj(self.j)).contains(z)
        if inner is not None:
            out = out & ~inner.contains(z)
        return out

    @property
    def area(self) -> float:
        return sum(r.area for r in self.rects())


@dataclass(frozen=True)
class Cone:
    """F = {|x| <= y, y > 1}, optionally cut at y <= y_max."""

    y_max: float | None = None

    def contains(self, z):
        z = np.asarray(z)
        out = (np.abs(z.real) <= z.imag) & (z.imag > 1)
        if self.y_max is not None:
            out = out & (z.imag <= self.y_max)
        return out


@dataclass(frozen=True)
class HalfDisc:
    R: float

    def contains(self, z):
        z = np.asarray(z)
        return (np.abs(z) < self.R) & (z.imag > 0)


Region = Union[Ball, CarlesonSquare, Shell, Cone, HalfDisc, Rect]


def region_contains(r: Region, z) -> bool | np.ndarray:
    z = as_complex(z)
    out = r.contains(z)
    return bool(out) if np.ndim(out) == 0 else out
