import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equicover import covering
from equicover.covering import (
    CoverContext,
    InversionError,
    alpha,
    alpha_reciprocal,
    construction_residual,
    default_context,
    equivariance_residual,
    invert_wp_prime_sq,
    phi,
    phi_on_F,
    phi_prime,
    phi_prime_error,
    transformation_residual,
)
from equicover.elliptic import klein_j
from equicover.gamma import IDENTITY, S, T, psi_matrix, random_word
from equicover.lattice import OMEGA, TRIANGLE, distance_to_excised, in_fundamental_triangle

RHO = cmath.exp(1j * math.pi / 3)  # corner of F on the right
RHO2 = cmath.exp(2j * math.pi / 3)
S_SHIFT = OMEGA + OMEGA**2


@pytest.fixture(scope="module")
def ctx():
    return default_context()


@pytest.fixture(scope="module")
def reciprocal():
    return CoverContext(normalisation="reciprocal")


def point_in_F(rng, im_max=2.5):
    while True:
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(math.sqrt(3) / 2, im_max))
        if abs(z) > 1.0:
            return z


def away_from_elliptic(z, r=0.1):
    return all(abs(z - e) > r for e in (1j, RHO, RHO2))


# --- context and alpha ---------------------------------------------------------


def test_seed_grid(ctx):
    assert all(in_fundamental_triangle(u, 1e-12) for u in ctx.seed_points)
    assert np.all(np.isfinite(ctx.seed_values))
    assert np.min(np.abs(ctx.seed_points)) >= 1e-3


def test_wp_prime_at_omega(ctx):
    # P(w) = 0 on R, so P'(w)^2 = -g3
    assert abs(ctx.ell.wp(OMEGA)) < 1e-12
    assert abs(ctx.wp_prime_omega_sq + ctx.ell.g3) < 1e-10


def test_unknown_normalisation_rejected():
    with pytest.raises(ValueError):
        CoverContext(normalisation="other")


def test_alpha_reciprocal_examples(reciprocal):
    k = reciprocal.wp_prime_omega_sq
    assert alpha(1, reciprocal) == 0
    assert abs(alpha(0, reciprocal) - (-1 / k)) < 1e-15
    assert abs(alpha(1 + k, reciprocal) - 1) < 1e-15
    assert alpha_reciprocal(1 + k, k) == alpha(1 + k, reciprocal)


def test_alpha_equivariant_sends_critical_values(ctx):
    k = ctx.wp_prime_omega_sq
    # J = 1 (at i) goes to 0 = P'(half period)^2; J = 0 (at the corner) to P'(w)^2
    assert alpha(1, ctx) == 0
    assert alpha(0, ctx) == k


# --- inversion -------------------------------------------------------------------


def test_invert_round_trip_at_centroid(ctx):
    w0 = TRIANGLE.centroid
    r = invert_wp_prime_sq(ctx.ell.wp_prime(w0) ** 2, ctx)
    assert abs(r.value - w0) < 1e-9


def test_invert_zero_gives_half_period(ctx):
    r = invert_wp_prime_sq(0, ctx)
    mids = TRIANGLE.edge_midpoints
    assert min(abs(r.value - m) for m in mids) < 1e-6
    assert abs(ctx.ell.wp_prime(r.value)) < 1e-6


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.9), st.floats(0.05, 0.9))
def test_invert_round_trip_interior(a, b):
    ctx = default_context()
    if a + b > 0.95:
        a, b = a / 2, b / 2
    w0 = a * OMEGA + b * OMEGA**2
    r = invert_wp_prime_sq(ctx.ell.wp_prime(w0) ** 2, ctx, side=-w0.real)
    # (P')^2 on the triangle is injective away from the boundary gluing
    assert abs(r.value - w0) < 1e-8


def test_invert_continuity(ctx):
    rng = random.Random(3)
    for _ in range(20):
        w0 = TRIANGLE.centroid + complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1))
        v = ctx.ell.wp_prime(w0) ** 2
        d = 1e-4 * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        assert abs(invert_wp_prime_sq(v, ctx).value - invert_wp_prime_sq(v + d, ctx).value) < 1e-2


def test_invert_large_values_use_cusp_branch(ctx):
    # either side of the switch the answers agree
    t = covering.CUSP_THRESHOLD
    lo = invert_wp_prime_sq(-0.999 * t, ctx)
    hi = invert_wp_prime_sq(-1.001 * t, ctx)
    assert abs(lo.value - hi.value) < 1e-3 * abs(lo.value)
    assert lo.residual < 1e-9 * t and hi.residual < 1e-9 * t


def test_invert_failure_reports_best():
    tight = CoverContext(max_iter=0, accept=1e-300)
    with pytest.raises(InversionError) as info:
        invert_wp_prime_sq(5.0 + 1j, tight)
    assert info.value.best is not None


# --- phi on F --------------------------------------------------------------------


def test_phi_at_2i(ctx):
    r = phi_on_F(2j, ctx)
    assert in_fundamental_triangle(r.value, 1e-9)
    assert r.residual < 1e-9
    assert construction_residual(2j, ctx) < 1e-9


def test_phi_at_i_is_half_period(ctx):
    assert abs(phi(1j, ctx).value - 1j * math.sqrt(3) / 2) < 1e-12


def test_phi_at_corner(ctx):
    v = phi(RHO2, ctx).value
    assert abs(v - OMEGA) < 1e-4
    v = phi(RHO, ctx).value
    assert min(abs(v - c) for c in (OMEGA, OMEGA**2)) < 1e-4


def test_phi_on_F_rejects_outside(ctx):
    with pytest.raises(ValueError):
        phi_on_F(0.5j, ctx)
    with pytest.raises(ValueError):
        phi(1 - 1j, ctx)


def test_phi_continuity(ctx):
    rng = random.Random(4)
    for _ in range(30):
        z = point_in_F(rng)
        assert abs(phi(z, ctx).value - phi(z + 1e-5, ctx).value) < 1e-2


def test_phi_orientation(ctx):
    # the left half of F goes to the right half of the triangle
    assert phi(-0.3 + 1.5j, ctx).value.real > 0
    assert phi(0.3 + 1.5j, ctx).value.real < 0


def test_phi_cube_relation(ctx):
    # with the equivariant alpha, 4 P(phi)^3 - g2 P(phi) = g3 J
    rng = random.Random(5)
    ell = ctx.ell
    for _ in range(30):
        z = point_in_F(rng)
        p = ell.wp(phi(z, ctx).value)
        lhs = 4 * p**3 - ell.g2 * p
        assert abs(lhs - ell.g3 * klein_j(z)) < 1e-8 * max(1.0, abs(lhs))


def test_construction_residual_on_F(ctx):
    rng = random.Random(6)
    for _ in range(200):
        z = point_in_F(rng)
        assert construction_residual(z, ctx) < 1e-9
        assert in_fundamental_triangle(phi(z, ctx).value, 1e-6)


def test_construction_residual_high_in_cusp(ctx):
    for y in (4.0, 8.0, 15.0, 30.0):
        assert construction_residual(complex(0.2, y), ctx) < 1e-9


def test_reciprocal_normalisation_breaks_seams(reciprocal, ctx):
    y = 1.5
    def jump(c):
        left = phi(complex(-0.5 + 1e-9, y), c).value
        right = phi(complex(0.5 - 1e-9, y), c).value
        return abs(OMEGA * left - right)
    assert jump(ctx) < 1e-6
    assert jump(reciprocal) > 0.1


# --- equivariance ---------------------------------------------------------------


def test_phi_on_F_equals_phi(ctx):
    z = 0.1 + 1.3j
    assert phi(z, ctx) == phi_on_F(z, ctx)


def test_translation_equivariance(ctx):
    rng = random.Random(7)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.3, 3))
        assert abs(phi(z + 1, ctx).value - OMEGA * phi(z, ctx).value) < 1e-6


def test_inversion_equivariance(ctx):
    rng = random.Random(8)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.3, 3))
        assert abs(phi(-1 / z, ctx).value - (-phi(z, ctx).value + S_SHIFT)) < 1e-6


def test_equivariance_residual_examples(ctx):
    assert equivariance_residual(IDENTITY, 1.2j + 0.1, ctx) == 0
    assert equivariance_residual(T, 2j, ctx) < 1e-7


def test_equivariance_on_grid(ctx):
    rng = random.Random(9)
    grid = [complex(x, y) for x in np.linspace(-0.45, 0.45, 10) for y in np.linspace(0.9, 2.5, 10)]
    grid = [z for z in grid if abs(z) > 1]
    worst = 0.0
    for _ in range(10):
        g = random_word(rng, 8).matrix()
        worst = max(worst, max(equivariance_residual(g, z, ctx) for z in grid))
    assert worst < 1e-6


def test_seams(ctx):
    for y in (0.9, 1.2, 2.0, 3.5):
        left = phi(complex(-0.5 + 1e-9, y), ctx).value
        right = phi(complex(0.5 - 1e-9, y), ctx).value
        assert abs(OMEGA * left - right) < 1e-6
    # the arc |z| = 1 is glued by S
    for x in (-0.4, -0.2, 0.1, 0.3):
        z = cmath.exp(1j * math.acos(x))
        assert abs(phi(-1 / z, ctx).value - psi_matrix(S)(phi(z, ctx).value)) < 1e-6


def test_range_avoids_excised_points(ctx):
    for x in np.linspace(-2, 2, 15):
        for y in np.linspace(0.05, 4, 15):
            assert distance_to_excised(phi(complex(x, y), ctx).value) > 0


# --- the derivative ----------------------------------------------------------------


def test_phi_prime_is_stable(ctx):
    assert phi_prime_error(0.2 + 1.4j, ctx) < 1e-8


def test_phi_prime_translation(ctx):
    rng = random.Random(10)
    for _ in range(10):
        z = point_in_F(rng)
        d0 = phi_prime(z, ctx)
        assert abs(phi_prime(z + 1, ctx) - OMEGA * d0) < 1e-5 * abs(d0)


def test_phi_prime_weight_two_law(ctx):
    rng = random.Random(11)
    for _ in range(8):
        g = random_word(rng, 4).matrix()
        for _ in range(4):
            z = point_in_F(rng)
            if not away_from_elliptic(z):
                continue
            w2, w6 = transformation_residual(g, z, ctx)
            assert w2 < 1e-4
            assert w6 < 1e-3


def test_phi_prime_stencil_must_stay_in_half_plane(ctx):
    with pytest.raises(ValueError):
        phi_prime(0.5e-3j + 0.2, ctx)
