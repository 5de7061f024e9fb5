"""Walk through the Eisenstein integers, the excised lattice and the
affine image of the modular group."""
import random

from equicover import gamma
from equicover.lattice import OMEGA, EisensteinInt, distance_to_excised, embed, nearest_excised_point

# x + y w with w a primitive sixth root of unity
x = EisensteinInt(2, -1)
y = EisensteinInt(0, 1)
print("x =", x, "->", embed(x))
print("x * y =", x * y, " norm(x) =", x.norm())

# the points we cut out of the plane
z = 0.3 + 0.7j
print("nearest excised point to", z, "is", nearest_excised_point(z), "at distance", round(distance_to_excised(z), 6))

# S and T act by affine maps of the Eisenstein integers
for word in ("S", "T", "ST", "STTT", "TTTTTT"):
    m = gamma.psi_word(word)
    print(f"{word:8s} -> {m}   normal form {tuple(gamma.normal_form(m))}")

# the normal form A^p B^q c^k round trips on random words
rng = random.Random(0)
bad = 0
for _ in range(500):
    m = gamma.psi_word(gamma.random_word(rng, 25))
    bad += gamma.normal_form(m).to_affine() != m
print("normal form failures on 500 random words:", bad)

# the kernel N: image is the identity
print("T^6 in N:", gamma.in_N("TTTTTT"), "  S in N:", gamma.in_N("S"))
print("omega itself:", OMEGA)
