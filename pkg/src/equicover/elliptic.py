"""Weierstrass functions, modular lambda and Klein's J.

The fast path reduces the period basis so that ``tau = period2/period1``
lies in the standard fundamental domain (``|q| <= exp(-pi*sqrt(3))``) and
sums the cosecant series

    P(z) = (pi/w1)**2 * (sum_n csc(pi (x + n tau))**2 - E2(tau)/3),  x = z/w1,

which needs about eight terms for double precision.  ``wp_direct_oracle``
is the slow, independent lattice sum used to check it.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .gamma import reduce_to_F

POLE_GUARD = 1e-8


class PoleError(ZeroDivisionError):
    """Raised when a point is within the guard radius of a pole."""


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ModularPoint:
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise ValueError(f"tau = {tau} is not in the upper half plane")
        object.__setattr__(self, "tau", tau)


def _as_tau(tau) -> complex:
    return tau.tau if isinstance(tau, ModularPoint) else ModularPoint(tau).tau


def _lambert(q: complex, power: int, eps: float = 1e-18, max_terms: int = 10_000) -> complex:
    """sum_{n>=1} sigma_power(n) q^n, via sum n^power q^n / (1 - q^n)."""
    total = 0j
    qn = 1 + 0j
    for n in range(1, max_terms):
        qn *= q
        term = n**power * qn / (1 - qn)
        total += term
        if abs(term) < eps * max(1.0, abs(total)):
            return total
    raise ConvergenceError("Lambert series did not converge")


def eisenstein_series(tau: complex) -> tuple[complex, complex, complex]:
    """Normalised ``(E2, E4, E6)`` at ``tau``; accurate when ``tau`` is reduced."""
    q = cmath.exp(2j * math.pi * tau)
    return (
        1 - 24 * _lambert(q, 1),
        1 + 240 * _lambert(q, 3),
        1 - 504 * _lambert(q, 5),
    )


def _csc2_cot(y: complex) -> tuple[complex, complex]:
    """``(csc^2(pi y), csc^2(pi y) cot(pi y))`` without overflow for large ``|Im y|``."""
    if abs(y.imag) <= 1.0:
        s = cmath.sin(math.pi * y)
        c = cmath.cos(math.pi * y)
        csc2 = 1.0 / (s * s)
        return csc2, csc2 * c / s
    if y.imag > 0:
        u = cmath.exp(2j * math.pi * y)
        d = 1.0 - u
        csc2 = -4.0 * u / (d * d)
        return csc2, csc2 * (-1j) * (1.0 + u) / d
    u = cmath.exp(-2j * math.pi * y)
    d = 1.0 - u
    csc2 = -4.0 * u / (d * d)
    return csc2, csc2 * 1j * (1.0 + u) / d


@dataclass(frozen=True)
class EllipticContext:
    """Weierstrass data for the lattice ``Z*period1 + Z*period2``.

    ``e1, e2, e3`` are ``P(period1/2), P(period2/2), P((period1+period2)/2)``.
    """

    period1: complex
    period2: complex
    tol: float = 1e-10
    # reduced basis, tau in the standard fundamental domain
    w1: complex = field(init=False)
    tau: complex = field(init=False)
    n_terms: int = field(init=False)
    E2: complex = field(init=False)
    g2: complex = field(init=False)
    g3: complex = field(init=False)
    e1: complex = field(init=False)
    e2: complex = field(init=False)
    e3: complex = field(init=False)

    def __post_init__(self):
        p1, p2 = complex(self.period1), complex(self.period2)
        if p1 == 0:
            raise ValueError("period1 must be nonzero")
        ratio = p2 / p1
        if abs(ratio.imag) < 1e-12 * max(1.0, abs(ratio)):
            raise ValueError(f"degenerate periods {p1}, {p2}: ratio is real")
        if ratio.imag < 0:
            raise ValueError("need Im(period2/period1) > 0")
        g, tau = reduce_to_F(ratio)
        # tau = (a r + b)/(c r + d) corresponds to the basis (c p2 + d p1, a p2 + b p1)
        w1 = g.c * p2 + g.d * p1
        tau = (g.a * p2 + g.b * p1) / w1
        q = abs(cmath.exp(2j * math.pi * tau))
        n_terms = max(1, math.ceil(math.log(1e-19) / math.log(q) + 0.5)) if q > 0 else 1
        E2, E4, E6 = eisenstein_series(tau)
        set_ = object.__setattr__
        set_(self, "period1", p1)
        set_(self, "period2", p2)
        set_(self, "w1", w1)
        set_(self, "tau", tau)
        set_(self, "n_terms", n_terms)
        set_(self, "E2", E2)
        set_(self, "g2", (4 * math.pi**4 / 3) * E4 / w1**4)
        set_(self, "g3", (8 * math.pi**6 / 27) * E6 / w1**6)
        set_(self, "e1", self.wp(p1 / 2))
        set_(self, "e2", self.wp(p2 / 2))
        set_(self, "e3", self.wp((p1 + p2) / 2))

    # -- reduction -----------------------------------------------------------

    def _reduce(self, z: complex) -> complex:
        """``z / w1`` moved into the cell ``|Re| <= 1/2``, ``|Im| <= Im(tau)/2`` (as a parallelogram)."""
        x = complex(z) / self.w1
        t = round(x.imag / self.tau.imag)
        x -= t * self.tau
        x -= round(x.real)
        return x

    def lattice_distance(self, z: complex) -> float:
        x = self._reduce(z)
        best = min(abs(x - (m + n * self.tau)) for m in (-1, 0, 1) for n in (-1, 0, 1))
        return best * abs(self.w1)

    @property
    def shortest_vector(self) -> float:
        return abs(self.w1)

    def _guard(self, z: complex) -> complex:
        x = self._reduce(z)
        for m in (-1, 0, 1):
            for n in (-1, 0, 1):
                if abs(x - (m + n * self.tau)) * abs(self.w1) < POLE_GUARD:
                    raise PoleError(f"{z} is within {POLE_GUARD} of a lattice point")
        return x

    def _sums(self, x: complex) -> tuple[complex, complex]:
        s0 = 0j
        s1 = 0j
        tau = self.tau
        for n in range(-self.n_terms, self.n_terms + 1):
            a, b = _csc2_cot(x + n * tau)
            s0 += a
            s1 += b
        return s0, s1

    # -- evaluation ----------------------------------------------------------

    def wp(self, z: complex) -> complex:
        x = self._guard(z)
        s0, _ = self._sums(x)
        return (math.pi / self.w1) ** 2 * (s0 - self.E2 / 3)

    def wp_prime(self, z: complex) -> complex:
        x = self._guard(z)
        _, s1 = self._sums(x)
        return -2 * math.pi**3 / self.w1**3 * s1

    def wp_and_prime(self, z: complex) -> tuple[complex, complex]:
        x = self._guard(z)
        s0, s1 = self._sums(x)
        k = math.pi / self.w1
        return k * k * (s0 - self.E2 / 3), -2 * k**3 * s1

    def wp_double_prime(self, z: complex) -> complex:
        p = self.wp(z)
        return 6 * p * p - self.g2 / 2

    def wp_difference(self, a: complex, b: complex) -> complex:
        """``P(a) - P(b)`` with the constant term cancelled before it is added."""
        xa, xb = self._guard(a), self._guard(b)
        return (math.pi / self.w1) ** 2 * (self._sums(xa)[0] - self._sums(xb)[0])

    def ode_residual(self, z: complex) -> float:
        p, dp = self.wp_and_prime(z)
        return abs(dp * dp - (4 * p**3 - self.g2 * p - self.g3))

    @property
    def half_periods(self) -> tuple[complex, complex, complex]:
        return self.period1 / 2, self.period2 / 2, (self.period1 + self.period2) / 2

    def j_from_invariants(self) -> complex:
        """``g2^3 / (g2^3 - 27 g3^2)`` for this lattice."""
        g2c = self.g2**3
        return g2c / (g2c - 27 * self.g3**2)


def make_context(period1: complex, period2: complex, tol: float = 1e-10) -> EllipticContext:
    return EllipticContext(period1, period2, tol)


def wp(ctx: EllipticContext, z: complex) -> complex:
    return ctx.wp(z)


def wp_prime(ctx: EllipticContext, z: complex) -> complex:
    return ctx.wp_prime(z)


def wp_direct_oracle(periods: tuple[complex, complex], z: complex, cutoff: int) -> complex:
    """``1/z^2 + sum' [1/(z-w)^2 - 1/w^2]`` over the square ``max(|m|,|n|) <= cutoff``."""
    p1, p2 = (complex(p) for p in periods)
    z = complex(z)
    total = 1 / (z * z)
    if cutoff < 1:
        return total
    r = np.arange(-cutoff, cutoff + 1)
    m, n = np.meshgrid(r, r, indexing="ij")
    w = (m * p1 + n * p2).ravel()
    w = w[(m != 0).ravel() | (n != 0).ravel()]
    # sum in a fixed order; the two parts are paired per lattice point
    return complex(total + np.sum(1.0 / (z - w) ** 2 - 1.0 / w**2))


# --- modular functions --------------------------------------------------------


def modular_lambda(tau) -> complex:
    """``(P((tau+1)/2) - P(tau/2)) / (P(1/2) - P(tau/2))`` for the periods ``{1, tau}``."""
    tau = _as_tau(tau)
    ctx = EllipticContext(1.0, tau)
    num = ctx.wp_difference((tau + 1) / 2, tau / 2)
    den = ctx.wp_difference(0.5, tau / 2)
    if abs(den) < 1e-14:
        raise ZeroDivisionError(f"degenerate tau {tau}: half-period values coincide")
    return num / den


def j_from_lambda(lam: complex) -> complex:
    """``(4/27) (1 - l + l^2)^3 / (l^2 (1 - l)^2)``."""
    den = lam * lam * (1 - lam) ** 2
    if den == 0:
        raise ZeroDivisionError(f"lambda = {lam} is a pole of J")
    return 4.0 / 27.0 * (1 - lam + lam * lam) ** 3 / den


def j_from_lambda_unsquared(lam: complex) -> complex:
    """Variant with denominator ``l^2 (1 - l^2)``; kept only to measure that it is not invariant."""
    return 4.0 / 27.0 * (1 - lam + lam * lam) ** 3 / (lam * lam * (1 - lam * lam))


def j_minus_one_from_lambda(lam: complex) -> complex:
    """``J - 1`` from the factored form, accurate near ``J = 1``."""
    return ((lam + 1) * (lam - 2) * (2 * lam - 1)) ** 2 / (27.0 * lam * lam * (1 - lam) ** 2)


def klein_j_parts(tau) -> tuple[complex, complex]:
    """``(J, J - 1)``, each with relative accuracy (J near 0 or 1 included)."""
    tau = _as_tau(tau)
    _, tau_r = reduce_to_F(tau)
    lam = modular_lambda(tau_r)
    if not cmath.isfinite(lam) or abs(lam) < 1e-300 or abs(1 - lam) < 1e-300:
        raise ZeroDivisionError(f"lambda({tau_r}) = {lam}; J cannot be recovered")
    return j_from_lambda(lam), j_minus_one_from_lambda(lam)


def klein_j(tau) -> complex:
    """Klein's invariant, normalised by ``J(i) = 1`` and ``J(w) = 0``."""
    return klein_j_parts(tau)[0]


def j_via_invariants(tau) -> complex:
    """Independent route to J from ``g2, g3`` of the lattice ``{1, tau}``."""
    return EllipticContext(1.0, _as_tau(tau)).j_from_invariants()
