"""Weight-lattice sums for sl3 that reproduce P and modular lambda.

A Cartan element ``H = diag(h1, h2, h3)`` built from a period pair has
root values ``h1 - h2 = -w2`` and ``h2 - h3 = w1 + w2``, so the root
lattice evaluated on ``H`` is the period lattice.  The representation on
Laurent monomials

    f(a, b, c) = (e1/e2)^a (e2/e3)^b (e3/e1)^c

has one weight per root-lattice point.  Letting one exponent be a half
integer shifts every weight by a half period:

    a half-integral  ->  (h1 - h2)/2   tag "W2"
    b half-integral  ->  (h2 - h3)/2   tag "W3"
    c half-integral  ->  (h3 - h1)/2   tag "W1"

The tags are chosen so that, with ``H = H(1, tau)``, W1, W2, W3 sit at
the half periods ``1/2``, ``tau/2``, ``(1 + tau)/2``; the lambda quotient
``(K3 - K2) / (K1 - K2)`` of the shifted sums then equals modular lambda
(the test suite checks this against the elliptic module).

Only differences of inverse-square sums are exposed: each sum on its own
is conditionally convergent, the differences converge absolutely.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

TAGS = ("none", "W1", "W2", "W3")
POLE_GUARD = 1e-8
_BLOCK = 256


class CartanElt(NamedTuple):
    h1: complex
    h2: complex
    h3: complex

    def check(self, tol: float = 1e-12) -> CartanElt:
        scale = max(1.0, abs(self.h1), abs(self.h2), abs(self.h3))
        if abs(self.h1 + self.h2 + self.h3) > tol * scale:
            raise ValueError(f"{self} is not trace free")
        return self


def cartan_from_periods(w1: complex, w2: complex) -> CartanElt:
    if w1 == 0 and w2 == 0:
        raise ValueError("periods must not both vanish")
    return CartanElt(
        w1 / 3 - w2 / 3,
        w1 / 3 + 2 * w2 / 3,
        -2 * w1 / 3 - w2 / 3,
    ).check()


def cartan_of_tau(tau: complex) -> CartanElt:
    return cartan_from_periods(1.0, tau)


def root_values(H: CartanElt) -> tuple[complex, complex]:
    return H.h1 - H.h2, H.h2 - H.h3


def shift_value(tag: str, H: CartanElt) -> complex:
    if tag == "none":
        return 0j
    if tag == "W1":
        return (H.h3 - H.h1) / 2
    if tag == "W2":
        return (H.h1 - H.h2) / 2
    if tag == "W3":
        return (H.h2 - H.h3) / 2
    raise ValueError(f"unknown tag {tag!r}; expected one of {TAGS}")


class WeightPoint(NamedTuple):
    """Root-lattice point ``n1*alpha1 + n2*alpha2`` plus the half shift of ``tag``."""

    n1: int
    n2: int
    tag: str = "none"

    def value(self, H: CartanElt) -> complex:
        a1, a2 = root_values(H)
        return self.n1 * a1 + self.n2 * a2 + shift_value(self.tag, H)


def _frac(x) -> Fraction:
    f = Fraction(x)
    if f.denominator not in (1, 2):
        raise ValueError(f"exponent {x} must be an integer or half integer")
    return f


class Monomial(NamedTuple):
    """The Laurent monomial ``(e1/e2)^a (e2/e3)^b (e3/e1)^c``."""

    a: Fraction
    b: Fraction
    c: Fraction

    @classmethod
    def of(cls, a, b, c) -> Monomial:
        return cls(_frac(a), _frac(b), _frac(c))

    @classmethod
    def from_exponents(cls, x1, x2, x3) -> Monomial:
        """Monomial ``e1^x1 e2^x2 e3^x3`` (``x1 + x2 + x3 = 0``), canonically with ``min(a, b, c)`` in ``[0, 1)``."""
        x1, x2, x3 = _frac(x1), _frac(x2), _frac(x3)
        if x1 + x2 + x3 != 0:
            raise ValueError("exponents of a weight vector must sum to zero")
        # a - c = x1, b - a = x2, c - b = x3; take c = 0 then renormalise
        a, b, c = x1, x1 + x2, Fraction(0)
        # f(a, b, c) = f(a + t, b + t, c + t) for every t: keep at most one half integer
        if sum(x.denominator == 2 for x in (a, b, c)) > 1:
            a, b, c = a + Fraction(1, 2), b + Fraction(1, 2), c + Fraction(1, 2)
        t = math.floor(min(a, b, c))
        return cls(a - t, b - t, c - t)

    def exponents(self) -> tuple[Fraction, Fraction, Fraction]:
        """Powers of ``e1, e2, e3``; these are also the weight's ``L1, L2, L3`` coefficients."""
        return self.a - self.c, self.b - self.a, self.c - self.b

    def canonical(self) -> Monomial:
        return Monomial.from_exponents(*self.exponents())

    def tag(self) -> str:
        halves = [x.denominator == 2 for x in self.canonical()]
        if not any(halves):
            return "none"
        return ("W2", "W3", "W1")[halves.index(True)]

    def weight(self) -> WeightPoint:
        x1, x2, _ = self.exponents()
        n1, n2 = x1, x1 + x2
        tag = self.tag()
        if tag == "W2":
            n1 -= Fraction(1, 2)
        elif tag == "W3":
            n2 -= Fraction(1, 2)
        elif tag == "W1":
            n1 += Fraction(1, 2)
            n2 += Fraction(1, 2)
        assert n1.denominator == 1 and n2.denominator == 1
        return WeightPoint(int(n1), int(n2), tag)


def rep_action(i: int, j: int, m: Monomial) -> tuple[Fraction, Monomial]:
    """``E_ij f = e_i d/de_j f`` on a Laurent monomial: returns ``(coefficient, monomial)``."""
    if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError("need distinct indices i, j in {1, 2, 3}")
    x = list(m.exponents())
    coeff = x[j - 1]
    x[i - 1] += 1
    x[j - 1] -= 1
    return coeff, Monomial.from_exponents(*x)


def diagonal_action(i: int, m: Monomial) -> Fraction:
    """Eigenvalue of ``E_ii = e_i d/de_i``."""
    return m.exponents()[i - 1]


# --- lattice sums --------------------------------------------------------------


def _square_blocks(H: CartanElt, cutoff: int):
    """Yield root-lattice values over ``|n1|, |n2| <= cutoff`` in fixed row blocks."""
    a1, a2 = root_values(H)
    n2 = np.arange(-cutoff, cutoff + 1)
    col = n2 * a2
    for start in range(-cutoff, cutoff + 1, _BLOCK):
        n1 = np.arange(start, min(start + _BLOCK, cutoff + 1))
        yield (n1[:, None] * a1 + col[None, :]).ravel()


def wp_trace_sum(H: CartanElt, z: complex, cutoff: int) -> complex:
    """``1/z^2 + sum' [1/(mu - z)^2 - 1/mu^2]`` over the weights of W in a square."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    z = complex(z)
    if abs(z) < POLE_GUARD:
        raise ZeroDivisionError(f"{z} is within {POLE_GUARD} of the zero weight")
    total = 1 / (z * z)
    if cutoff == 0:
        return total
    parts = []
    for mu in _square_blocks(H, cutoff):
        mu = mu[mu != 0]
        d = mu - z
        if np.any(np.abs(d) < POLE_GUARD):
            raise ZeroDivisionError(f"{z} is within {POLE_GUARD} of a weight")
        parts.append(np.sum(1 / d**2 - 1 / mu**2))
    return complex(total + sum(parts))


def killing_diff(tag_i: str, tag_j: str, H: CartanElt, cutoff: int) -> complex:
    """Paired difference ``sum [1/(mu + s_i)^2 - 1/(mu + s_j)^2]`` over a square of weights."""
    if "none" in (tag_i, tag_j):
        raise ValueError("the unshifted sum diverges at the zero weight; use W1, W2 or W3")
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    si, sj = shift_value(tag_i, H), shift_value(tag_j, H)
    if tag_i == tag_j:
        return 0j
    parts = []
    for mu in _square_blocks(H, cutoff):
        di, dj = mu + si, mu + sj
        if np.any(np.abs(di) < 1e-12) or np.any(np.abs(dj) < 1e-12):
            raise ZeroDivisionError("a shifted weight vanishes; the Cartan element is degenerate")
        parts.append(np.sum(1 / di**2 - 1 / dj**2))
    return complex(sum(parts))


def lambda_rep(tau: complex, cutoff: int) -> complex:
    """``(K3 - K2) / (K1 - K2)`` for ``H = H(1, tau)``."""
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError(f"{tau} is not in the upper half plane")
    H = cartan_of_tau(tau)
    num = killing_diff("W3", "W2", H, cutoff)
    den = killing_diff("W1", "W2", H, cutoff)
    if abs(den) < 1e-12:
        raise ZeroDivisionError("denominator of the lambda quotient vanishes")
    return num / den


# --- Sym^{3n}: the representation of highest weight 3n L1 -----------------------


def sym_weights(n: int) -> list[tuple[int, int, int]]:
    """Weights ``(p, q, r)``, ``p + q + r = 3n``, in lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    N = 3 * n
    return [(p, q, N - p - q) for p in range(N + 1) for q in range(N - p + 1)]


def sym_weight_count(n: int) -> int:
    return (3 * n + 1) * (3 * n + 2) // 2


def sym_root_coordinates(n: int) -> set[tuple[int, int]]:
    """Root-lattice coordinates ``(n1, n2)`` of the weights of Sym^{3n}."""
    # (p-n) L1 + (q-n) L2 + (r-n) L3 = (p-n) alpha1 + (p+q-2n) alpha2
    return {(p - n, p + q - 2 * n) for p, q, _ in sym_weights(n)}


def _sym_values(n: int, H: CartanElt) -> np.ndarray:
    N = 3 * n
    p, q = np.meshgrid(np.arange(N + 1), np.arange(N + 1), indexing="ij")
    keep = (p + q) <= N
    p, q = p[keep], q[keep]
    return p * H.h1 + q * H.h2 + (N - p - q) * H.h3, (p == n) & (q == n)


def sym_trace_partial(n: int, H: CartanElt, z: complex, dual: bool = False) -> complex:
    """``sum [1/(v - z)^2 - 1/v^2]`` over the weights of Sym^{3n} (zero weight: ``1/z^2`` only).

    ``dual=True`` uses the dual representation, i.e. all weights negated.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    z = complex(z)
    v, zero = _sym_values(n, H)
    if dual:
        v = -v
    d = v - z
    if np.any(np.abs(d) < POLE_GUARD):
        raise ZeroDivisionError(f"{z} is within {POLE_GUARD} of a weight")
    vz = v[~zero]
    return complex(1 / (z * z) + np.sum(1 / d[~zero] ** 2 - 1 / vz**2))


def sym_trace_average(n: int, H: CartanElt, z: complex) -> complex:
    return (sym_trace_partial(n, H, z) + sym_trace_partial(n, H, z, dual=True)) / 2
