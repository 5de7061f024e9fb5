"""Weierstrass P on the hexagonal lattice and the modular functions
lambda and J."""
import numpy as np

from equicover import elliptic
from equicover.lattice import OMEGA

R = elliptic.make_context(OMEGA + 1, OMEGA**2 - 1)
print("g2 =", R.g2, " g3 =", R.g3)  # g2 vanishes on a hexagonal lattice
print("P(w) =", R.wp(OMEGA), "  P'(w)^2 =", R.wp_prime(OMEGA) ** 2)

# the differential equation P'^2 = 4P^3 - g2 P - g3, sampled on a small grid
zs = [complex(a, b) for a in np.linspace(0.1, 0.9, 5) for b in np.linspace(0.1, 0.9, 5)]
print("worst ODE residual:", max(R.ode_residual(z) for z in zs))

# the direct lattice sum agrees, slowly
z = 0.3 + 0.2j
print("fast P:", R.wp(z))
print("brute force (radius 100):", elliptic.wp_direct_oracle((OMEGA + 1, OMEGA**2 - 1), z, 100))

# lambda and J at the special points
print("lambda(i) =", elliptic.modular_lambda(1j))
print("J(i) =", elliptic.klein_j(1j), "  J(rho) =", elliptic.klein_j(OMEGA))
tau = 0.21 + 1.3j
print("J(tau) - J(-1/tau) =", abs(elliptic.klein_j(tau) - elliptic.klein_j(-1 / tau)))
