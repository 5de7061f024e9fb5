"""Invariant suites run by ``equicover verify``.

Each suite returns a :class:`RunReport`; sample sizes follow the module
contracts and every random draw comes from a fixed seed.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import covering, elliptic, gamma, lattice, sl3rep
from .gamma import (
    AFF_B,
    AFF_a,
    AFF_b,
    AFF_c,
    AFF_ID,
    S_BAR,
    T_BAR,
    affine_power,
    psi_matrix,
    psi_word,
    random_word,
)
from .lattice import OMEGA

SUITES = ("group", "elliptic", "cover", "sl3")


@dataclass
class Check:
    name: str
    passed: bool
    max_residual: float


@dataclass
class RunReport:
    suite: str
    passed: int = 0
    failed: int = 0
    wall_time: float = 0.0
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, tol: float) -> None:
        ok = bool(residual <= tol)
        self.checks.append(Check(name, ok, float(residual)))
        if ok:
            self.passed += 1
        else:
            self.failed += 1

    def add_flag(self, name: str, ok: bool) -> None:
        self.add(name, 0.0 if ok else 1.0, 0.0)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failed": self.failed,
            "wall_time": round(self.wall_time, 3),
            "checks": [asdict(c) for c in self.checks],
        }


def _random_point_in_F(rng: random.Random, im_max: float = 2.5) -> complex:
    while True:
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(math.sqrt(3) / 2, im_max))
        if abs(z) > 1.0:
            return z


def group_suite(seed: int = 1) -> RunReport:
    rep = RunReport("group")
    rng = random.Random(seed)
    rep.add_flag("S^2 = id", psi_word("SS") == AFF_ID)
    rep.add_flag("(ST)^3 = id", psi_word("STSTST") == AFF_ID)
    rep.add_flag("T^6 = id", psi_word("TTTTTT") == AFF_ID)
    a, b, c = AFF_a, AFF_b, AFF_c
    rels = {
        "ba = ab": (b @ a, a @ b),
        "ca = bc": (c @ a, b @ c),
        "cb = a^-1 b c": (c @ b, a.inverse() @ b @ c),
        "ca^-1 = b^-1 c": (c @ a.inverse(), b.inverse() @ c),
        "cb^-1 = a b^-1 c": (c @ b.inverse(), a @ b.inverse() @ c),
        "c^6 = 1": (affine_power(c, 6), AFF_ID),
    }
    for name, (lhs, rhs) in rels.items():
        rep.add_flag(name, lhs == rhs)
    rep.add_flag("psi(S) = B c^3", S_BAR == AFF_B @ affine_power(AFF_c, 3))
    rep.add_flag("T = c", T_BAR == AFF_c)
    ok = True
    for _ in range(1000):
        m = psi_word(random_word(rng, 20))
        ok &= gamma.normal_form(m).to_affine() == m
    rep.add_flag("normal form round trip (1000 words)", ok)
    ok = True
    for _ in range(500):
        g, h = random_word(rng, 10).matrix(), random_word(rng, 10).matrix()
        ok &= gamma.ell_character(g * h) == (gamma.ell_character(g) + gamma.ell_character(h)) % 6
        ok &= psi_matrix(g * h) == psi_matrix(g) @ psi_matrix(h)
    rep.add_flag("ell and psi are homomorphisms (500 pairs)", ok)
    t6 = gamma.T**6
    ok = True
    for _ in range(200):
        w = random_word(rng, 12).matrix()
        ok &= gamma.in_N(w * t6 * w.inverse())
    rep.add_flag("conjugates of T^6 lie in N (200)", ok)
    ok = all(gamma.in_N(gamma.n_matrix(x, y)) for x in range(-5, 6) for y in range(-5, 6) if (x, y) != (0, 0))
    rep.add_flag("1 - 6A lies in N for |x|,|y| <= 5", ok)
    rep.add_flag("S, T, ST not in N", not any(gamma.in_N(w) for w in ("S", "T", "ST")))
    ok = True
    for _ in range(100):
        x, y, p, q = (rng.randint(-50, 50) for _ in range(4))
        A, B = gamma.NMatrix(x, y), gamma.NMatrix(p, q)
        ok &= gamma.core_square(A) == ((0, 0), (0, 0))
        s, scalar = gamma.clifford_bracket(A, B)
        ok &= scalar and abs(s) == (x * q - p * y) ** 2
    rep.add_flag("A^2 = 0 and |AB + BA| = (xq - py)^2 I (100)", ok)
    return rep


def elliptic_suite(seed: int = 2) -> RunReport:
    rep = RunReport("elliptic")
    rng = random.Random(seed)
    lattices = {
        "R": (OMEGA + 1, OMEGA * OMEGA - 1),
        "square": (1.0, 1j),
        "(1, 2i)": (1.0, 2j),
        "(1, 0.3+1.1i)": (1.0, 0.3 + 1.1j),
    }
    for label, (p1, p2) in lattices.items():
        ctx = elliptic.make_context(p1, p2)
        worst = 0.0
        sym = 0.0
        for _ in range(100):
            z = rng.uniform(0.05, 0.95) * p1 + rng.uniform(0.05, 0.95) * p2
            if ctx.lattice_distance(z) < 0.05 * ctx.shortest_vector:
                continue
            p = ctx.wp(z)
            worst = max(worst, ctx.ode_residual(z) / max(1.0, abs(p) ** 3))
            sym = max(
                sym,
                abs(ctx.wp(-z) - p) / abs(p),
                abs(ctx.wp(z + p1) - p) / abs(p),
                abs(ctx.wp(z + p2) - p) / abs(p),
                abs(ctx.wp_prime(-z) + ctx.wp_prime(z)) / abs(ctx.wp_prime(z)),
            )
        rep.add(f"ODE residual {label}", worst, 1e-8)
        rep.add(f"parity/periodicity {label}", sym, 1e-10)
        rep.add(f"e1+e2+e3 = 0 {label}", abs(ctx.e1 + ctx.e2 + ctx.e3), 1e-10)
    R = elliptic.make_context(OMEGA + 1, OMEGA * OMEGA - 1)
    rep.add("g2(R) = 0", abs(R.g2), 1e-10)
    worst = 0.0
    for _ in range(20):
        z = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        if R.lattice_distance(z) < 0.1:
            continue
        worst = max(worst, abs(R.wp(z) - elliptic.wp_direct_oracle((R.period1, R.period2), z, 150)))
    rep.add("fast P vs direct sum (cutoff 150)", worst, 1e-3)
    rep.add("lambda(i) = 1/2", abs(elliptic.modular_lambda(1j) - 0.5), 1e-9)
    rep.add("J(i) = 1", abs(elliptic.klein_j(1j) - 1), 1e-8)
    rep.add("J(w) = 0", abs(elliptic.klein_j(OMEGA)), 1e-8)
    fe = 0.0
    for _ in range(20):
        tau = complex(rng.uniform(-1, 1), rng.uniform(0.4, 2.0))
        lam = elliptic.modular_lambda(tau)
        fe = max(fe, abs(elliptic.modular_lambda(tau + 2) - lam), abs(elliptic.modular_lambda(-1 / tau) - (1 - lam)))
    rep.add("lambda functional equations", fe, 1e-8)
    inv = 0.0
    for _ in range(50):
        g = random_word(rng, 6).matrix()
        z = _random_point_in_F(rng, 2.0)
        jz = elliptic.klein_j(z)
        inv = max(inv, abs(elliptic.klein_j(g.act(z)) - jz) / max(1.0, abs(jz)))
    rep.add("J invariance (50 words)", inv, 1e-7)
    return rep


def cover_suite(seed: int = 3, ctx: covering.CoverContext | None = None) -> RunReport:
    rep = RunReport("cover")
    rng = random.Random(seed)
    ctx = ctx or covering.default_context()
    worst_c = 0.0
    outside = 0.0
    for _ in range(200):
        z = _random_point_in_F(rng)
        r = covering.phi(z, ctx)
        worst_c = max(worst_c, covering.construction_residual(z, ctx))
        outside = max(outside, 0.0 if lattice.in_fundamental_triangle(r.value, 1e-6) else 1.0)
    rep.add("construction residual (200 points of F)", worst_c, 1e-9)
    rep.add("phi(F) inside the closed triangle", outside, 0.0)
    worst = 0.0
    grid = [
        complex(-0.45 + 0.9 * i / 9, 0.9 + 1.6 * j / 9)
        for i in range(10)
        for j in range(10)
    ]
    grid = [z for z in grid if abs(z) > 1.0]
    for _ in range(30):
        g = random_word(rng, 8).matrix()
        for z in grid:
            worst = max(worst, covering.equivariance_residual(g, z, ctx))
    rep.add("equivariance (30 words x F grid)", worst, 1e-6)
    seam = 0.0
    for y in (0.9, 1.1, 1.5, 2.0, 3.0):
        left = covering.phi(complex(-0.5 + 1e-7, y), ctx).value
        right = covering.phi(complex(0.5 - 1e-7, y), ctx).value
        seam = max(seam, abs(T_BAR(left) - right))
    rep.add("seam consistency Re = +-1/2", seam, 1e-6)
    # phi lands in B; the 1e-3 margin is only claimed where the reduced point has Im <= 4
    min_all, min_low = math.inf, math.inf
    for i in range(50):
        for j in range(50):
            z = complex(-2 + 4 * i / 49, 0.05 + 3.95 * j / 49)
            d = lattice.distance_to_excised(covering.phi(z, ctx).value)
            min_all = min(min_all, d)
            if gamma.reduce_to_F(z)[1].imag <= 4:
                min_low = min(min_low, d)
    rep.add_flag("phi avoids every excised point (50x50 grid)", min_all > 0)
    rep.add("distance >= 1e-3 where reduced Im <= 4", max(0.0, 1e-3 - min_low), 0.0)
    return rep


def sl3_suite(cutoff: int = 500) -> RunReport:
    rep = RunReport("sl3")
    H = sl3rep.cartan_from_periods(OMEGA + 1, OMEGA * OMEGA - 1)
    R = elliptic.make_context(OMEGA + 1, OMEGA * OMEGA - 1)
    rep.add("standard H = diag(1, w^2, w^4)", max(abs(H.h1 - 1), abs(H.h2 - OMEGA**2), abs(H.h3 - OMEGA**4)), 1e-14)
    mono = True
    for z in (0.3 + 0.2j, 0.1 + 0.5j, -0.4 + 0.3j, 0.7 - 0.1j, 0.2j):
        ex = R.wp(z)
        errs = [abs(sl3rep.wp_trace_sum(H, z, k) - ex) for k in (50, 100, 200, 400)]
        mono &= errs[0] > errs[1] > errs[2] > errs[3]
    rep.add_flag("trace sum error decreases with cutoff", mono)
    worst = 0.0
    for tau in (1j, 2j, 0.3 + 1.1j):
        worst = max(worst, abs(sl3rep.lambda_rep(tau, cutoff) - elliptic.modular_lambda(tau)))
    rep.add(f"lambda_rep vs lambda (cutoff {cutoff})", worst, 1e-2)
    rep.add_flag(
        "Sym^{3n} weight count",
        all(len(sl3rep.sym_weights(n)) == sl3rep.sym_weight_count(n) for n in range(51)),
    )
    return rep


_SUITES: dict[str, Callable[..., RunReport]] = {
    "group": group_suite,
    "elliptic": elliptic_suite,
    "cover": cover_suite,
    "sl3": sl3_suite,
}


def run_suite(name: str, cutoff: int | None = None) -> RunReport:
    start = time.perf_counter()
    if name == "sl3" and cutoff is not None:
        rep = sl3_suite(cutoff)
    else:
        rep = _SUITES[name]()
    rep.wall_time = time.perf_counter() - start
    return rep
