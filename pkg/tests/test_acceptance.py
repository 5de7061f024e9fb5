"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the terminal summary under "acceptance criteria".
"""
import math
import random
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from equicover import covering, elliptic, gamma, sl3rep
from equicover.gamma import (
    AFF_A,
    AFF_B,
    AFF_ID,
    AFF_a,
    AFF_b,
    AFF_c,
    NMatrix,
    affine_power,
    psi_matrix,
    psi_word,
    random_word,
)
from equicover.lattice import OMEGA, in_fundamental_triangle

R_PERIODS = (OMEGA + 1, OMEGA * OMEGA - 1)


def record(number, title, ok, detail, started):
    line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail} ({time.perf_counter() - started:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def point_in_F(rng, im_max=2.5):
    while True:
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(math.sqrt(3) / 2, im_max))
        if abs(z) > 1.0:
            return z


def test_01_group_presentation():
    t0 = time.perf_counter()
    a, b, c = AFF_a, AFF_b, AFF_c
    pres = {
        "S^2": psi_word("SS") == AFF_ID,
        "(ST)^3": psi_word("STSTST") == AFF_ID,
        "T^6": psi_word("TTTTTT") == AFF_ID,
    }
    rels = {
        "ba=ab": b @ a == a @ b,
        "ca=bc": c @ a == b @ c,
        "cb=a^-1bc": c @ b == a.inverse() @ b @ c,
        "ca^-1=b^-1c": c @ a.inverse() == b.inverse() @ c,
        "cb^-1=ab^-1c": c @ b.inverse() == a @ b.inverse() @ c,
        "c^6=1": affine_power(c, 6) == AFF_ID,
    }
    bad = [k for k, v in {**pres, **rels}.items() if not v]
    record(1, "group presentation", not bad, f"{len(pres)} generator relations, {len(rels)} Aut+ relations, failing={bad}", t0)


def test_02_normal_form_uniqueness():
    t0 = time.perf_counter()
    rng = random.Random(2)
    round_trips = 0
    for _ in range(1000):
        m = psi_word(random_word(rng, 20))
        round_trips += gamma.normal_form(m).to_affine() == m
    s_ok = psi_word("S") == AFF_B @ affine_power(AFF_c, 3)
    b_ok = psi_word("STTT") == AFF_B
    a_img = psi_word("TTStt")
    a_ok = a_img == AFF_A
    ok = round_trips == 1000 and s_ok and b_ok and a_ok
    detail = (
        f"round trips {round_trips}/1000, psi(S)=Bc^3 {s_ok}, B=psi(ST^3) {b_ok}, "
        f"psi(T^2ST^-2)=A {a_ok} (normal form {tuple(gamma.normal_form(a_img))}, A is {tuple(gamma.normal_form(AFF_A))})"
    )
    record(2, "normal form uniqueness", ok, detail, t0)


def test_03_kernel():
    t0 = time.perf_counter()
    rng = random.Random(3)
    t6 = gamma.T**6
    conj = sum(gamma.in_N(w * t6 * w.inverse()) for w in (random_word(rng, 12).matrix() for _ in range(200)))
    grid = [gamma.in_N(gamma.n_matrix(x, y)) for x in range(-5, 6) for y in range(-5, 6) if (x, y) != (0, 0)]
    neg = [gamma.in_N(w) for w in ("S", "T", "ST")]
    ok = conj == 200 and all(grid) and not any(neg)
    record(3, "kernel N", ok, f"conjugates {conj}/200, n_matrix {sum(grid)}/{len(grid)}, S/T/ST in N: {neg}", t0)


def test_04_clifford_identities():
    t0 = time.perf_counter()
    rng = random.Random(4)
    sq = sum(gamma.core_square(NMatrix(rng.randint(-99, 99), rng.randint(-99, 99))) == ((0, 0), (0, 0)) for _ in range(100))
    good, signs = 0, set()
    for _ in range(100):
        x, y, p, q = (rng.randint(-99, 99) for _ in range(4))
        s, scalar = gamma.clifford_bracket(NMatrix(x, y), NMatrix(p, q))
        good += scalar and abs(s) == (x * q - p * y) ** 2
        if s:
            signs.add(int(math.copysign(1, s)))
    ok = sq == 100 and good == 100
    record(4, "Clifford identities", ok, f"A^2=0 {sq}/100, |AB+BA|=(xq-py)^2 I {good}/100, sign of scalar {sorted(signs)}", t0)


def test_05_elliptic_core():
    t0 = time.perf_counter()
    rng = random.Random(5)
    worst = {}
    for periods in (R_PERIODS, (1.0, 1j), (1.0, 2j), (1.0, 0.3 + 1.1j)):
        ctx = elliptic.make_context(*periods)
        res, n = 0.0, 0
        while n < 100:
            z = rng.uniform(0, 1) * ctx.period1 + rng.uniform(0, 1) * ctx.period2
            if ctx.lattice_distance(z) < 0.1 * ctx.shortest_vector:
                continue
            res = max(res, ctx.ode_residual(z))
            n += 1
        worst[periods] = res
    R = elliptic.make_context(*R_PERIODS)
    oracle = 0.0
    for _ in range(20):
        while True:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if R.lattice_distance(z) > 0.1:
                break
        oracle = max(oracle, abs(R.wp(z) - elliptic.wp_direct_oracle(R_PERIODS, z, 150)))
    ode = max(worst.values())
    ok = ode < 1e-8 and abs(R.g2) < 1e-10 and oracle < 1e-3
    record(5, "elliptic core", ok, f"max ODE residual {ode:.2e}, |g2(R)| {abs(R.g2):.2e}, fast vs direct {oracle:.2e}", t0)


def test_06_modular_identities():
    t0 = time.perf_counter()
    rng = random.Random(6)
    zs = [point_in_F(rng, 2.0) for _ in range(10)]
    inv = 0.0
    for _ in range(50):
        g = random_word(rng, 6).matrix()
        for z in zs:
            inv = max(inv, abs(elliptic.klein_j(g.act(z)) - elliptic.klein_j(z)))
    j_omega = abs(elliptic.klein_j(OMEGA))
    lam_i = abs(elliptic.modular_lambda(1j) - 0.5)
    fe = 0.0
    for _ in range(50):
        tau = complex(rng.uniform(-1, 1), rng.uniform(0.4, 2.0))
        lam = elliptic.modular_lambda(tau)
        fe = max(fe, abs(elliptic.modular_lambda(tau + 2) - lam), abs(elliptic.modular_lambda(-1 / tau) - (1 - lam)))
    ok = inv < 1e-7 and j_omega < 1e-8 and lam_i < 1e-9 and fe < 1e-8
    detail = f"max |J(gz)-J(z)| {inv:.2e}, |J(w)| {j_omega:.1e}, |lambda(i)-1/2| {lam_i:.1e}, functional eqs {fe:.1e}"
    record(6, "modular identities", ok, detail, t0)


def test_07_covering_construction():
    t0 = time.perf_counter()
    ctx = covering.default_context()
    rng = random.Random(7)
    # absolute residual, F sampled up to Im z = 2.5
    worst = max(covering.construction_residual(point_in_F(rng), ctx, relative=False) for _ in range(200))
    grid = [complex(x, y) for x in np.linspace(-0.5, 0.5, 21) for y in np.linspace(0.87, 3.0, 21)]
    grid = [z for z in grid if abs(z) >= 1]
    inside = sum(in_fundamental_triangle(covering.phi(z, ctx).value, 1e-6) for z in grid)
    ok = worst < 1e-9 and inside == len(grid)
    record(7, "covering construction", ok, f"max residual {worst:.2e}, phi(F grid) in triangle {inside}/{len(grid)}", t0)


def test_08_equivariance():
    t0 = time.perf_counter()
    ctx = covering.default_context()
    rng = random.Random(8)
    zs = [point_in_F(rng) for _ in range(100)]
    worst = 0.0
    for _ in range(30):
        g = random_word(rng, 8).matrix()
        for z in zs:
            worst = max(worst, covering.equivariance_residual(g, z, ctx))
    seam = 0.0
    # just inside both edges, so the two sides are evaluated independently
    for y in np.linspace(0.87, 3.0, 12):
        left = covering.phi(complex(-0.5 + 1e-9, y), ctx).value
        right = covering.phi(complex(0.5 - 1e-9, y), ctx).value
        seam = max(seam, abs(psi_matrix(gamma.T)(left) - right))
    ok = worst < 1e-6 and seam < 1e-6
    record(8, "equivariance", ok, f"max |phi(gz)-psi(g)phi(z)| {worst:.2e}, seam {seam:.2e}", t0)


def test_09_transformation_law():
    t0 = time.perf_counter()
    ctx = covering.default_context()
    rng = random.Random(9)
    elliptic_pts = (1j, complex(0.5, math.sqrt(3) / 2), complex(-0.5, math.sqrt(3) / 2))
    zs = []
    while len(zs) < 20:
        z = point_in_F(rng)
        if min(abs(z - e) for e in elliptic_pts) > 0.1:
            zs.append(z)
    w2 = w6 = 0.0
    for _ in range(20):
        g = random_word(rng, 4).matrix()
        for z in zs:
            a, b = covering.transformation_residual(g, z, ctx)
            w2, w6 = max(w2, a), max(w6, b)
    ok = w2 < 1e-4 and w6 < 1e-3
    record(9, "transformation law", ok, f"weight-2 relative {w2:.2e}, sixth power relative {w6:.2e}", t0)


def test_10_sl3_trace_sums():
    t0 = time.perf_counter()
    H = sl3rep.cartan_from_periods(*R_PERIODS)
    R = elliptic.make_context(*R_PERIODS)
    pts = (0.3 + 0.2j, 0.1 + 0.5j, -0.4 + 0.3j, 0.7 - 0.1j, 0.2j)
    rel, factors = [], []
    for z in pts:
        exact = R.wp(z)
        e150 = abs(sl3rep.wp_trace_sum(H, z, 150) - exact)
        e300 = abs(sl3rep.wp_trace_sum(H, z, 300) - exact)
        rel.append(e300 / abs(exact))
        factors.append(e150 / e300)
    close = all(r < 0.05 for r in rel)
    halving = all(1.4 <= f <= 2.6 for f in factors)
    counts = all(len(sl3rep.sym_weights(n)) == (3 * n + 1) * (3 * n + 2) // 2 for n in range(51))
    sym_dec = []
    for z in pts[:3]:
        exact = R.wp(z)
        sym_dec.append(
            abs(sl3rep.sym_trace_partial(100, H, z) - exact) < abs(sl3rep.sym_trace_partial(50, H, z) - exact)
        )
    ok = close and halving and counts and all(sym_dec)
    detail = (
        f"max rel error at 300 {max(rel):.1e}, error factor 150->300 {min(factors):.2f}..{max(factors):.2f} "
        f"(required [1.4, 2.6]), weight counts {counts}, Sym n=100 beats n=50 {sum(sym_dec)}/3"
    )
    record(10, "sl3 trace sums", ok, detail, t0)


def test_11_lambda_via_representations():
    t0 = time.perf_counter()
    errs = {tau: abs(sl3rep.lambda_rep(tau, 500) - elliptic.modular_lambda(tau)) for tau in (1j, 2j, 0.3 + 1.1j)}
    trend = [abs(sl3rep.lambda_rep(1j, k) - 0.5) for k in (125, 250, 500)]
    ratios = ", ".join(f"{a / b:.2f}" for a, b in zip(trend, trend[1:]))
    ok = all(e < 1e-2 for e in errs.values())
    detail = f"max error {max(errs.values()):.1e}; at tau=i errors {', '.join(f'{e:.1e}' for e in trend)} for cutoffs 125/250/500 (ratios {ratios})"
    record(11, "lambda via representations", ok, detail, t0)
