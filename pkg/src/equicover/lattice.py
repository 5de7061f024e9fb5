"""Exact arithmetic in Z[w], the excised lattice R and the fundamental triangle.

Here ``w = (1 + i*sqrt(3))/2`` is a primitive sixth root of unity, so
``w**2 = w - 1``.  Two lattices appear:

* ``Z[w] = Z + Z*w``, the Eisenstein integers (called ``L`` in the docs);
* ``R = Z*(w + 1) + Z*(w**2 - 1)``, the index-3 sublattice whose points are
  removed from the plane.  ``R`` is the principal ideal ``(1 + w) Z[w]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

OMEGA = complex(0.5, math.sqrt(3.0) / 2.0)

# checked arithmetic: everything stays inside signed 64-bit
INT_BOUND = 2**63 - 1


def _checked(x: int) -> int:
    if -INT_BOUND <= x <= INT_BOUND:
        return x
    raise OverflowError(f"Eisenstein coefficient {x} exceeds the 64-bit range")


@dataclass(frozen=True)
class EisensteinInt:
    """The Eisenstein integer ``u + v*w``."""

    u: int
    v: int

    def __post_init__(self):
        _checked(self.u)
        _checked(self.v)

    def __add__(self, other: EisensteinInt) -> EisensteinInt:
        return EisensteinInt(_checked(self.u + other.u), _checked(self.v + other.v))

    def __sub__(self, other: EisensteinInt) -> EisensteinInt:
        return EisensteinInt(_checked(self.u - other.u), _checked(self.v - other.v))

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.u, -self.v)

    def __mul__(self, other: EisensteinInt) -> EisensteinInt:
        return eis_mul(self, other)

    def __pow__(self, k: int) -> EisensteinInt:
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> EisensteinInt:
        # conj(w) = 1 - w
        return EisensteinInt(_checked(self.u + self.v), -self.v)

    def norm(self) -> int:
        return _checked(self.u * self.u + self.u * self.v + self.v * self.v)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def unit_inverse(self) -> EisensteinInt:
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit of Z[w]")
        return self.conj()

    def unit_exponent(self) -> int:
        """Return ``k`` in 0..5 with ``self == w**k``."""
        for k, unit in enumerate(UNITS):
            if unit == self:
                return k
        raise ValueError(f"{self} is not a unit of Z[w]")

    def __complex__(self) -> complex:
        return embed(self)

    def __str__(self) -> str:
        if self.v == 0:
            return f"{self.u}"
        if self.u == 0:
            return f"{self.v}w"
        sign = "+" if self.v > 0 else "-"
        return f"{self.u}{sign}{abs(self.v)}w"


def eis_mul(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    """Multiply ``(u1 + v1 w)(u2 + v2 w)`` using ``w**2 = w - 1``."""
    vv = x.v * y.v
    return EisensteinInt(
        _checked(x.u * y.u - vv),
        _checked(x.u * y.v + x.v * y.u + vv),
    )


def embed(x: EisensteinInt) -> complex:
    return complex(x.u + 0.5 * x.v, x.v * (math.sqrt(3.0) / 2.0))


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
W = EisensteinInt(0, 1)
# w**k for k = 0..5
UNITS = (
    ONE,
    W,
    EisensteinInt(-1, 1),
    EisensteinInt(-1, 0),
    EisensteinInt(0, -1),
    EisensteinInt(1, -1),
)

# generators of R
R1 = EisensteinInt(1, 1)  # w + 1
R2 = EisensteinInt(-2, 1)  # w**2 - 1 = w - 2


class ExcisedPoint(NamedTuple):
    """The point ``m*(w + 1) + n*(w**2 - 1)`` of R."""

    m: int
    n: int

    def to_eisenstein(self) -> EisensteinInt:
        return EisensteinInt(_checked(self.m - 2 * self.n), _checked(self.m + self.n))

    def rotate(self) -> ExcisedPoint:
        """Multiply by ``w`` (rotation by 60 degrees)."""
        # w*(w+1) = (w+1) + (w^2-1),  w*(w^2-1) = -(w+1)
        return ExcisedPoint(self.m - self.n, self.m)


def excised_embed(p: ExcisedPoint) -> complex:
    m, n = p
    return complex(1.5 * (m - n), (math.sqrt(3.0) / 2.0) * (m + n))


def excised_from_eisenstein(x: EisensteinInt) -> ExcisedPoint:
    """Inverse of :meth:`ExcisedPoint.to_eisenstein`; raises if ``x`` is not in R."""
    if (x.v - x.u) % 3:
        raise ValueError(f"{x} does not lie in R = (1 + w) Z[w]")
    n = (x.v - x.u) // 3
    return ExcisedPoint(x.u + 2 * n, n)


def in_R(x: EisensteinInt) -> bool:
    return (x.v - x.u) % 3 == 0


def excised_coordinates(z: complex) -> tuple[float, float]:
    """Real coordinates ``(m, n)`` of ``z`` in the basis ``(w+1, w**2-1)``."""
    # z = 1.5 (m - n) + i (sqrt3/2)(m + n)
    a = z.real / 1.5
    b = z.imag / (math.sqrt(3.0) / 2.0)
    return (a + b) / 2.0, (b - a) / 2.0


def nearest_excised_point(z: complex) -> ExcisedPoint:
    """Closest point of R to ``z``; ties go to the lexicographically smallest ``(m, n)``."""
    fm, fn = excised_coordinates(z)
    m0, n0 = math.floor(fm), math.floor(fn)
    best = None
    for m in range(m0 - 1, m0 + 3):
        for n in range(n0 - 1, n0 + 3):
            d = abs(z - excised_embed(ExcisedPoint(m, n)))
            key = (d, m, n)
            if best is None or key < best:
                best = key
    return ExcisedPoint(best[1], best[2])


def distance_to_excised(z: complex) -> float:
    return abs(z - excised_embed(nearest_excised_point(z)))


class FundamentalTriangle(NamedTuple):
    """The triangle with corners ``0, w, w**2``: a fundamental domain of Aut+(R) on B."""

    vertices: tuple[complex, complex, complex] = (0j, OMEGA, OMEGA * OMEGA)

    def barycentric(self, u: complex) -> tuple[float, float, float]:
        a, b, c = self.vertices
        det = ((b - a).conjugate() * (c - a)).imag
        lb = ((u - a).conjugate() * (c - a)).imag / det
        lc = ((b - a).conjugate() * (u - a)).imag / det
        return 1.0 - lb - lc, lb, lc

    def contains(self, u: complex, tol: float = 0.0) -> bool:
        return all(-tol <= t <= 1.0 + tol for t in self.barycentric(u))

    @property
    def centroid(self) -> complex:
        return sum(self.vertices) / 3.0

    @property
    def edge_midpoints(self) -> tuple[complex, complex, complex]:
        a, b, c = self.vertices
        return (a + b) / 2, (b + c) / 2, (c + a) / 2


TRIANGLE = FundamentalTriangle()


def in_fundamental_triangle(u: complex, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return TRIANGLE.contains(u, tol)


def fold_to_triangle(u: complex) -> tuple[int, ExcisedPoint, complex]:
    """Move ``u`` into the closed triangle with an element of Aut+(R).

    Returns ``(k, p, v)`` with ``v = w**k * (u - embed(p))`` inside the
    triangle (up to rounding), i.e. ``v`` is the image of ``u`` under
    ``z -> w**k z - w**k embed(p)``.
    """
    p = nearest_excised_point(u)
    d = u - excised_embed(p)
    # the Voronoi hexagon of 0 is cut by the sixth roots into six copies of the triangle
    ang = math.atan2(d.imag, d.real)
    sector = math.floor((ang - math.pi / 3.0) / (math.pi / 3.0)) % 6
    k = (-sector) % 6
    v = d * OMEGA**k
    return k, p, v
