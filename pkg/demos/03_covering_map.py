"""The covering map phi: upper half plane -> plane minus the excised
lattice, and its equivariance."""
import random

import numpy as np

from equicover import covering, gamma
from equicover.lattice import distance_to_excised

ctx = covering.default_context()

for z in (1j, 2j, 0.25 + 1.1j, -0.4 + 3j):
    r = covering.phi(z, ctx)
    print(f"phi({z}) = {r.value:.12f}   residual {r.residual:.1e}")

# phi(g z) = psi(g) phi(z) for every g in the modular group
rng = random.Random(1)
worst = 0.0
for _ in range(20):
    g = gamma.random_word(rng, 10).matrix()
    z = complex(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 2.5))
    worst = max(worst, covering.equivariance_residual(g, z, ctx))
print("worst equivariance residual over 20 random words:", worst)

# the image never touches the excised points, even deep toward the real axis
xs, ys = np.linspace(-1.5, 1.5, 13), np.linspace(0.08, 3.0, 13)
dmin = min(distance_to_excised(covering.phi(complex(x, y), ctx).value) for x in xs for y in ys)
print("closest approach to an excised point on a 13x13 grid:", dmin)

# phi' transforms with weight two up to the character
g = gamma.word_to_matrix("STT")
print("transformation residuals (weight 2, sixth power):", covering.transformation_residual(g, 0.1 + 1.4j, ctx))
