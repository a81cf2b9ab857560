"""Exact arithmetic primitives: rationals, integer lattice points, and
certified scalars/vectors (exact center + exact error radius).

Everything here is exact.  A certified quantity is a rational interval
[value - radius, value + radius]; comparing two certified quantities yields a
four-valued verdict and *never* silently degrades to a boolean guess.  All
norms are sup-norms and all distances to the integer lattice are measured in
the sup metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, PrecisionError

__all__ = [
    "ExactRational",
    "rational",
    "Verdict",
    "CertifiedScalar",
    "CertifiedVector",
    "LatticePoint3",
    "dist_nearest_int",
    "nearest_int",
    "dist_nearest_lattice",
    "wedge",
    "is_primitive",
    "projective_distance",
    "certified_dist_nearest_lattice",
]

# Exact rationals are plain fractions.Fraction values: always reduced, with a
# positive denominator, and hashable -- exactly the canonical-form contract.
ExactRational = Fraction


def rational(x) -> Fraction:
    """Coerce ints, fractions and strings ("3/7", "0.125") to an exact rational.

    Decimal strings parse exactly (no binary float ever intervenes).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational: {x!r}") from exc
    if isinstance(x, float):
        raise DomainError(
            f"refusing float {x!r}: pass a string or Fraction for exactness"
        )
    raise DomainError(f"cannot interpret {type(x).__name__} as an exact rational")


class Verdict(Enum):
    """Outcome of a certified comparison.

    EQUAL is only ever produced when both operands are exact (radius zero) and
    their values coincide; with a positive radius the honest answer for
    overlapping intervals is INCONCLUSIVE.
    """

    LESS = -1
    EQUAL = 0
    GREATER = 1
    INCONCLUSIVE = 2

    @property
    def conclusive(self) -> bool:
        return self is not Verdict.INCONCLUSIVE


@dataclass(frozen=True, slots=True)
class CertifiedScalar:
    """An exact rational center plus an exact nonnegative error radius."""

    value: Fraction
    radius: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", rational(self.value))
        object.__setattr__(self, "radius", rational(self.radius))
        if self.radius < 0:
            raise DomainError("certified radius must be >= 0")

    @classmethod
    def exact(cls, x) -> "CertifiedScalar":
        return cls(rational(x), Fraction(0))

    @classmethod
    def from_bounds(cls, lo, hi) -> "CertifiedScalar":
        lo, hi = rational(lo), rational(hi)
        if hi < lo:
            raise DomainError("from_bounds needs lo <= hi")
        return cls((lo + hi) / 2, (hi - lo) / 2)

    @property
    def lo(self) -> Fraction:
        return self.value - self.radius

    @property
    def hi(self) -> Fraction:
        return self.value + self.radius

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def compare(self, other) -> Verdict:
        """Four-valued interval comparison; conclusive only when the intervals
        are disjoint (or both degenerate and equal)."""
        if not isinstance(other, CertifiedScalar):
            other = CertifiedScalar.exact(other)
        if self.hi < other.lo:
            return Verdict.LESS
        if self.lo > other.hi:
            return Verdict.GREATER
        if self.is_exact and other.is_exact and self.value == other.value:
            return Verdict.EQUAL
        return Verdict.INCONCLUSIVE

    def require_compare(self, other, what: str = "quantities") -> Verdict:
        v = self.compare(other)
        if v is Verdict.INCONCLUSIVE:
            raise PrecisionError(
                f"comparison of {what} inconclusive: "
                f"[{self.lo}, {self.hi}] vs "
                f"[{(other.lo if isinstance(other, CertifiedScalar) else other)}, "
                f"{(other.hi if isinstance(other, CertifiedScalar) else other)}]"
            )
        return v

    def __add__(self, other):
        if isinstance(other, CertifiedScalar):
            return CertifiedScalar(self.value + other.value, self.radius + other.radius)
        return CertifiedScalar(self.value + rational(other), self.radius)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedScalar(-self.value, self.radius)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CertifiedScalar) else -rational(other))

    def __mul__(self, other):
        if isinstance(other, CertifiedScalar):
            # interval product via endpoints (exact)
            cands = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
            return CertifiedScalar.from_bounds(min(cands), max(cands))
        k = rational(other)
        return CertifiedScalar(self.value * k, self.radius * abs(k))

    __rmul__ = __mul__

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return CertifiedScalar(-self.value, self.radius)
        return CertifiedScalar.from_bounds(Fraction(0), max(-self.lo, self.hi))

    def __str__(self):
        if self.is_exact:
            return str(self.value)
        return f"{self.value} ± {self.radius}"


class CertifiedVector:
    """A vector of exact rational coordinates with one shared sup-norm radius."""

    __slots__ = ("coords", "radius")

    def __init__(self, coords: Iterable, radius=0):
        self.coords: tuple[Fraction, ...] = tuple(rational(c) for c in coords)
        if not self.coords:
            raise DomainError("empty vector")
        self.radius: Fraction = rational(radius)
        if self.radius < 0:
            raise DomainError("certified radius must be >= 0")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def common_denominator(self) -> tuple[tuple[int, ...], int]:
        """Return (numerators, D) with coords[i] == numerators[i] / D."""
        d = 1
        for c in self.coords:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return tuple(int(c * d) for c in self.coords), d

    def __eq__(self, other):
        return (
            isinstance(other, CertifiedVector)
            and self.coords == other.coords
            and self.radius == other.radius
        )

    def __hash__(self):
        return hash((self.coords, self.radius))

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coords)
        return f"CertifiedVector(({body}), radius={self.radius})"


@dataclass(frozen=True, slots=True)
class LatticePoint3:
    """Integer point of Z^3 with sup-norm and wedge (cross) product."""

    x: int
    y: int
    z: int

    def __post_init__(self):
        for c in (self.x, self.y, self.z):
            if not isinstance(c, int):
                raise DomainError("lattice coordinates must be ints")

    @property
    def norm(self) -> int:
        return max(abs(self.x), abs(self.y), abs(self.z))

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def dot(self, other: "LatticePoint3") -> int:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def wedge(self, other: "LatticePoint3") -> "LatticePoint3":
        return LatticePoint3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def __add__(self, other):
        return LatticePoint3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return LatticePoint3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return LatticePoint3(-self.x, -self.y, -self.z)

    def scale(self, k: int) -> "LatticePoint3":
        return LatticePoint3(k * self.x, k * self.y, k * self.z)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def wedge(p: LatticePoint3, q: LatticePoint3) -> LatticePoint3:
    return p.wedge(q)


def is_primitive(p: LatticePoint3) -> bool:
    """True iff gcd of the coordinates is 1.  The zero point is an error."""
    if p.is_zero:
        raise DomainError("primitivity of the zero point is undefined")
    return math.gcd(math.gcd(abs(p.x), abs(p.y)), abs(p.z)) == 1


def nearest_int(x: Fraction) -> int:
    """Nearest integer to x; on a half-integer tie the smaller one."""
    x = rational(x)
    f = x.numerator // x.denominator
    frac = x - f
    return f if 2 * frac <= 1 else f + 1


def dist_nearest_int(x) -> Fraction:
    """Distance from x to the nearest integer (values in [0, 1/2])."""
    x = rational(x)
    r = x - (x.numerator // x.denominator)
    return min(r, 1 - r)


def dist_nearest_lattice(coords: Sequence) -> Fraction:
    """Sup-norm distance from a rational point to the nearest point of Z^d."""
    coords = [rational(c) for c in coords]
    if not coords:
        raise DomainError("empty point")
    return max(dist_nearest_int(c) for c in coords)


def as_vector(theta) -> CertifiedVector:
    """Coerce a scalar, sequence, or CertifiedVector to a CertifiedVector."""
    if isinstance(theta, CertifiedVector):
        return theta
    if isinstance(theta, (int, str, Fraction)):
        return CertifiedVector((theta,))
    return CertifiedVector(theta)


def certified_dist_nearest_lattice(q: int, theta: CertifiedVector) -> CertifiedScalar:
    """Certified distance from q*theta to Z^d.

    The lattice distance is 1-Lipschitz in the sup metric, so a perturbation of
    theta by at most r moves the distance by at most |q| * r.
    """
    if not isinstance(q, int):
        raise DomainError("multiplier must be an int")
    if q == 0:
        raise DomainError("multiplier must be nonzero")
    center = dist_nearest_lattice([q * c for c in theta.coords])
    return CertifiedScalar(center, abs(q) * theta.radius)


def certified_form_dist(delta: Sequence, theta: CertifiedVector) -> CertifiedScalar:
    """Certified distance from <delta, theta> to the nearest integer.

    A sup-norm perturbation of theta by r moves the form value by at most
    |delta|_1 * r, and the distance to Z is 1-Lipschitz.
    """
    delta = [int(c) for c in delta]
    if len(delta) != theta.dim:
        raise DomainError("form vector and theta have different dimensions")
    center = dist_nearest_int(sum(c * t for c, t in zip(delta, theta.coords)))
    return CertifiedScalar(center, sum(abs(c) for c in delta) * theta.radius)


def projective_distance(p: LatticePoint3, q: LatticePoint3) -> Fraction:
    """d(p~, q~) = |p ^ q| / (|p| |q|) on the projective plane (sup norms)."""
    if p.is_zero or q.is_zero:
        raise DomainError("projective distance needs nonzero points")
    return Fraction(p.wedge(q).norm, p.norm * q.norm)
