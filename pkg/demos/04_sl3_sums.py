"""P and lambda as sums over weights of sl3 representations."""
from equicover import elliptic, sl3rep
from equicover.lattice import OMEGA

periods = (OMEGA + 1, OMEGA**2 - 1)
H = sl3rep.cartan_from_periods(*periods)
R = elliptic.make_context(*periods)
z = 0.3 + 0.2j
exact = R.wp(z)
print("P(z) =", exact)

# square truncation: the error falls by about four each time the cutoff doubles
prev = None
for n in (50, 100, 200, 400):
    err = abs(sl3rep.wp_trace_sum(H, z, n) - exact)
    print(f"cutoff {n:4d}  error {err:.3e}" + (f"  ratio {prev / err:.2f}" if prev else ""))
    prev = err

# symmetric powers only converge like 1/n; averaging with the dual helps a lot
for n in (20, 40, 80):
    plain = abs(sl3rep.sym_trace_partial(n, H, z) - exact)
    avg = abs(sl3rep.sym_trace_average(n, H, z) - exact)
    print(f"Sym^{n}: plain {plain:.2e}  averaged {avg:.2e}")

for tau in (1j, 2j, 0.3 + 1.1j):
    print(f"lambda({tau}): sums {sl3rep.lambda_rep(tau, 400):.10f}  theta {elliptic.modular_lambda(tau):.10f}")
