"""The covering map phi from the upper half plane onto B = C minus R.

On the standard fundamental domain F the map is the composite

    F --J--> C --alpha--> C --((P')^2)^-1--> closed triangle (0, w, w^2)

and elsewhere it is extended by equivariance: if ``g z`` lies in F then
``phi(z) = psi(g)^-1 phi(g z)``.

``alpha`` is affine.  Two normalisations are available:

``"equivariant"`` (default)
    ``alpha(J) = (1 - J) * P'(w)^2``.  It sends the critical values of J
    (0 at the order-3 point, 1 at ``i``) to the critical values of
    ``(P')^2`` on the triangle (``P'(w)^2`` at the corners ``w, w^2`` and 0
    at the half period), which is what makes the boundary identifications
    of F and of the triangle agree.
``"reciprocal"``
    ``alpha(J) = (J - 1) / P'(w)^2``.  Kept for comparison; it does not
    glue across the edges of F.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .elliptic import EllipticContext, PoleError, klein_j, klein_j_parts
from .gamma import GammaElt, in_standard_F, psi_matrix, reduce_to_F, ell_value
from .lattice import OMEGA, TRIANGLE, fold_to_triangle

S_BAR_C = lambda u: -u + (OMEGA + OMEGA * OMEGA)  # noqa: E731

NORMALISATIONS = ("equivariant", "reciprocal")


class InversionError(ArithmeticError):
    def __init__(self, message: str, best: "PhiResult | None" = None):
        super().__init__(message)
        self.best = best


class PhiResult(NamedTuple):
    value: complex
    residual: float
    iterations: int


@dataclass(frozen=True)
class CoverContext:
    normalisation: str = "equivariant"
    max_iter: int = 50
    residual_target: float = 1e-11
    accept: float = 1e-9
    grid_size: int = 64
    ell: EllipticContext = field(init=False, repr=False)
    wp_prime_omega_sq: complex = field(init=False)
    seed_points: np.ndarray = field(init=False, repr=False)
    seed_values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.normalisation not in NORMALISATIONS:
            raise ValueError(f"normalisation must be one of {NORMALISATIONS}")
        ell = EllipticContext(OMEGA + 1, OMEGA * OMEGA - 1)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "wp_prime_omega_sq", ell.wp_prime(OMEGA) ** 2)
        n = self.grid_size - 1
        pts = []
        for i in range(n + 1):
            for j in range(n + 1 - i):
                u = (i * OMEGA + j * OMEGA * OMEGA) / n
                if abs(u) >= 1e-3:
                    pts.append(u)
        pts = np.array(pts)
        vals = np.array([ell.wp_prime(u) ** 2 for u in pts])
        object.__setattr__(self, "seed_points", pts)
        object.__setattr__(self, "seed_values", vals)


_DEFAULT: CoverContext | None = None


def default_context() -> CoverContext:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = CoverContext()
    return _DEFAULT


def alpha(z: complex, ctx: CoverContext) -> complex:
    k = ctx.wp_prime_omega_sq
    if ctx.normalisation == "reciprocal":
        return (z - 1) / k
    return (1 - z) * k


def alpha_reciprocal(z: complex, wp_prime_omega_sq: complex) -> complex:
    """``(z - 1) / P'(w)^2`` exactly as written."""
    return (z - 1) / wp_prime_omega_sq


# --- inversion of (P')^2 on the triangle ------------------------------------


def _newton(v: complex, w: complex, ctx: CoverContext) -> PhiResult:
    ell = ctx.ell
    scale = max(1.0, abs(v))
    best = None
    for it in range(ctx.max_iter + 1):
        try:
            p, dp = ell.wp_and_prime(w)
        except PoleError:
            break
        f = dp * dp - v
        res = abs(f)
        if best is None or res < best.residual:
            best = PhiResult(w, res, it)
        if res <= ctx.residual_target * scale or it == ctx.max_iter:
            break
        df = 2 * dp * (6 * p * p - ell.g2 / 2)
        if df == 0:
            break
        step = f / df
        # damping: never move further than a third of the distance to the nearest pole
        limit = ell.lattice_distance(w) / 3
        if abs(step) > limit:
            step *= limit / abs(step)
        w = w - step
    if best is None:
        raise InversionError(f"Newton could not start from the seed for v = {v}")
    return best


def _polish(w: complex, v: complex, ctx: CoverContext, cubic: complex | None = None, steps: int = 4) -> complex:
    """Refine a root of ``P'(w)^2 = v`` through a formulation with a simple root.

    Near a half period ``P'`` is the better coordinate (solve ``P' = s`` with
    ``s^2 = v``); elsewhere ``P`` is (solve ``4P^3 - g2 P = cubic`` for the
    root nearest ``P(w)``, then ``P(w) = p``).  ``cubic`` defaults to
    ``v + g3``; callers that know it more accurately pass it in.
    """
    ell = ctx.ell
    try:
        p, dp = ell.wp_and_prime(w)
    except PoleError:
        return w
    ddp = 6 * p * p - ell.g2 / 2
    if abs(dp) * 4 < abs(ddp) * ctx.ell.shortest_vector:
        s = cmath.sqrt(v)
        if abs(s + dp) < abs(s - dp):
            s = -s
        for _ in range(steps):
            p, dp = ell.wp_and_prime(w)
            ddp = 6 * p * p - ell.g2 / 2
            if ddp == 0:
                break
            w = w - (dp - s) / ddp
    else:
        if cubic is None:
            cubic = v + ell.g3
        roots = np.roots([4, 0, -ell.g2, -cubic])
        target = complex(min(roots, key=lambda r: abs(r - p)))
        for _ in range(steps):
            p, dp = ell.wp_and_prime(w)
            if dp == 0:
                break
            w = w - (p - target) / dp
    return w


def _asymptotic_seed(v: complex) -> complex:
    # near 0, (P')^2 ~ 4 / u^6
    r = (4 / v) ** (1 / 6) if v != 0 else 0j
    for k in range(6):
        u = r * OMEGA**k
        if math.pi / 3 - 1e-12 <= cmath.phase(u) <= 2 * math.pi / 3 + 1e-12:
            return u
    return r


CUSP_THRESHOLD = 1e12


def _cusp_root(v: complex, ctx: CoverContext, side: float) -> PhiResult:
    """Root near the puncture from ``P'(u)^2 = 4/u^6 - 4 g3/7 + O(u^6)``."""
    g3 = ctx.ell.g3
    r = (4 / (v + 4 * g3 / 7)) ** (1 / 6)
    roots = [r * OMEGA**k for k in range(6)]
    u = min(roots, key=lambda c: abs(cmath.phase(c) - math.pi / 2))
    cands = triangle_candidates(u)
    if side and len(cands) > 1:
        u = max(cands, key=lambda c: side * c.real)
    # the series is exact to O(u^12) relative, far below double precision here
    residual = abs(4 / u**6 - 4 * g3 / 7 - v)
    return PhiResult(u, residual, 0)


def _seeds(v: complex, ctx: CoverContext, seed: complex | None):
    if seed is not None:
        yield seed
    d = np.abs(ctx.seed_values - v)
    for idx in np.argsort(d, kind="stable")[:3]:
        yield complex(ctx.seed_points[idx])
    if abs(v) > 1e3:
        yield _asymptotic_seed(v)
    yield from TRIANGLE.edge_midpoints
    rng = random.Random(0x5EED)
    for _ in range(16):
        a, b = rng.random(), rng.random()
        if a + b > 1:
            a, b = 1 - a, 1 - b
        yield a * OMEGA + b * OMEGA * OMEGA


def triangle_candidates(u: complex, tol: float = 1e-9) -> list[complex]:
    """Points of the closed triangle identified with ``u`` by the edge gluings."""
    cands = [u, OMEGA * u, u / OMEGA, S_BAR_C(u)]
    out = []
    for c in cands:
        if TRIANGLE.contains(c, tol) and all(abs(c - o) > 1e-14 for o in out):
            out.append(c)
    return out or [u]


def invert_wp_prime_sq(
    v: complex,
    ctx: CoverContext | None = None,
    seed: complex | None = None,
    side: float = 0.0,
    cubic: complex | None = None,
) -> PhiResult:
    """Solve ``P'(w)^2 = v`` for ``w`` in the closed triangle ``(0, w, w^2)``.

    Newton's method runs from a sequence of seeds; whatever root it reaches
    is folded back into the triangle by an element of Aut+(R).  On the
    triangle's boundary a value has two preimages; ``side`` picks one: the
    candidate maximising ``side * Re(w)`` wins.  ``cubic`` is an accurate
    value of ``4 P(w)^3 - g2 P(w)`` at the solution, used in the final polish.
    """
    ctx = ctx or default_context()
    v = complex(v)
    if abs(v) > CUSP_THRESHOLD:
        return _cusp_root(v, ctx, side)
    scale = max(1.0, abs(v))
    best = None
    total = 0
    for s in _seeds(v, ctx, seed):
        r = _newton(v, s, ctx)
        total += r.iterations
        if best is None or r.residual < best.residual:
            best = r
        if r.residual <= ctx.accept * scale:
            break
    if best is None or best.residual > ctx.accept * scale:
        raise InversionError(f"(P')^2 = {v} not solved; best residual {best.residual if best else None}", best)
    w = _polish(best.value, v, ctx, cubic)
    try:
        if abs(ctx.ell.wp_prime(w) ** 2 - v) <= max(best.residual, ctx.accept * scale):
            best = PhiResult(w, best.residual, best.iterations)
    except PoleError:
        pass
    _, _, u = fold_to_triangle(best.value)
    cands = triangle_candidates(u)
    if side and len(cands) > 1:
        u = max(cands, key=lambda c: side * c.real)
    else:
        u = cands[0]
    residual = abs(ctx.ell.wp_prime(u) ** 2 - v)
    return PhiResult(u, residual, total)


# --- phi ---------------------------------------------------------------------


def phi_on_F(z: complex, ctx: CoverContext | None = None) -> PhiResult:
    ctx = ctx or default_context()
    z = complex(z)
    if not in_standard_F(z, tol=1e-12):
        raise ValueError(f"{z} is not in the standard fundamental domain")
    j, j1 = klein_j_parts(z)
    if ctx.normalisation == "equivariant":
        # (1 - J) K with K = P'(w)^2 = -g3, so 4P^3 - g2 P = g3 + v = -J K
        k = ctx.wp_prime_omega_sq
        v, cubic = -j1 * k, -j * k
    else:
        v, cubic = alpha(j, ctx), None
    # the left half of F lands on the right half of the triangle and vice versa
    return invert_wp_prime_sq(v, ctx, side=-z.real, cubic=cubic)


def phi(z: complex, ctx: CoverContext | None = None) -> PhiResult:
    ctx = ctx or default_context()
    z = complex(z)
    if not z.imag > 0:
        raise ValueError(f"{z} is not in the upper half plane")
    g, zr = reduce_to_F(z)
    r = phi_on_F(zr, ctx)
    return PhiResult(psi_matrix(g).inverse()(r.value), r.residual, r.iterations)


def phi_value(z: complex, ctx: CoverContext | None = None) -> complex:
    return phi(z, ctx).value


def phi_prime(z: complex, ctx: CoverContext | None = None, radius: float = 1e-3, points: int = 16) -> complex:
    """Derivative of phi from the trapezoid rule on a circle (discrete Cauchy integral)."""
    ctx = ctx or default_context()
    z = complex(z)
    if z.imag - radius <= 0:
        raise ValueError(f"stencil of radius {radius} around {z} leaves the upper half plane")
    total = 0j
    for k in range(points):
        e = cmath.exp(2j * math.pi * k / points)
        total += phi(z + radius * e, ctx).value / e
    return total / (points * radius)


def phi_prime_error(z: complex, ctx: CoverContext | None = None, radius: float = 1e-3, points: int = 16) -> float:
    """Relative change of :func:`phi_prime` when the radius is halved."""
    d1 = phi_prime(z, ctx, radius, points)
    d2 = phi_prime(z, ctx, radius / 2, points)
    return abs(d1 - d2) / abs(d1)


def equivariance_residual(g: GammaElt, z: complex, ctx: CoverContext | None = None) -> float:
    ctx = ctx or default_context()
    lhs = phi(g.act(z), ctx).value
    rhs = psi_matrix(g)(phi(z, ctx).value)
    return abs(lhs - rhs)


def transformation_residual(g: GammaElt, z: complex, ctx: CoverContext | None = None) -> tuple[float, float]:
    """Relative residuals of the weight-2 law and of its sixth power at ``z``."""
    ctx = ctx or default_context()
    d0 = phi_prime(z, ctx)
    dg = phi_prime(g.act(z), ctx)
    j = g.cocycle(z) ** 2
    weight2 = abs(dg - ell_value(g) * j * d0) / abs(d0)
    six = abs(dg**6 - j**6 * d0**6) / abs(j**6 * d0**6)
    return weight2, six


def _wp_prime_sq(w: complex, ctx: CoverContext) -> complex:
    # inside the pole guard the Laurent series is exact to rounding
    if abs(w) < 1e-3:
        return 4 / w**6 - 4 * ctx.ell.g3 / 7
    return ctx.ell.wp_prime(w) ** 2


def construction_residual(z: complex, ctx: CoverContext | None = None, relative: bool = True) -> float:
    """``|P'(phi(z))^2 - alpha(J(z))|``, by default divided by ``max(1, |alpha(J(z))|)``.

    The absolute form grows with ``Im z`` like ``exp(2 pi Im z)`` times the
    rounding error, so it is only meaningful low in the cusp.
    """
    ctx = ctx or default_context()
    z = complex(z)
    w = phi(z, ctx).value
    # phi(z) = psi(g)^-1 phi(z'), and P' is unchanged up to a sixth root of unity
    g, zr = reduce_to_F(z)
    w = psi_matrix(g)(w)
    if ctx.normalisation == "equivariant":
        target = -klein_j_parts(zr)[1] * ctx.wp_prime_omega_sq
    else:
        target = alpha(klein_j(zr), ctx)
    res = abs(_wp_prime_sq(w, ctx) - target)
    return res / max(1.0, abs(target)) if relative else res
