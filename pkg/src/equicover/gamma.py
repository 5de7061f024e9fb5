"""The modular group, its image in the affine group of the plane, and the kernel N.

PSL2(Z) elements are sign-normalised integer matrices (:class:`GammaElt`).
The homomorphism ``psi`` sends

    S -> (z -> -z + w + w**2),    T -> (z -> w z)

onto the group of orientation preserving automorphisms of the lattice
``R = (1 + w) Z[w]``.  All of this is exact; floating point only enters in
:func:`reduce_to_F` and when a map is applied to a complex number.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .lattice import (
    ONE,
    OMEGA,
    UNITS,
    ZERO,
    EisensteinInt,
    embed,
    in_R,
)

LETTERS = "STt"  # t = T**-1


def _normalise(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    for x in (a, b, c):
        if x != 0:
            return (a, b, c, d) if x > 0 else (-a, -b, -c, -d)
    raise ValueError("degenerate matrix")


@dataclass(frozen=True, init=False)
class GammaElt:
    """An element of PSL2(Z), stored with the first nonzero of (a, b, c) positive."""

    a: int
    b: int
    c: int
    d: int

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c != 1:
            raise ValueError(f"determinant of [[{a},{b}],[{c},{d}]] is not 1")
        a, b, c, d = _normalise(a, b, c, d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __mul__(self, other: GammaElt) -> GammaElt:
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return GammaElt(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> GammaElt:
        return GammaElt(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> GammaElt:
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    def act(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def cocycle(self, z: complex) -> complex:
        """``c z + d`` (defined up to sign; squares are well defined)."""
        return self.c * z + self.d

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"GammaElt([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


IDENTITY = GammaElt(1, 0, 0, 1)
S = GammaElt(0, -1, 1, 0)
T = GammaElt(1, 1, 0, 1)
T_INV = GammaElt(1, -1, 0, 1)

_LETTER_MATRIX = {"S": S, "T": T, "t": T_INV}
_INVERSE_LETTER = {"S": "S", "T": "t", "t": "T"}


def free_reduce(letters: Iterable[str]) -> str:
    """Cancel adjacent ``Tt``/``tT`` pairs (and ``SS``, since S has order 2 in PSL2)."""
    out: list[str] = []
    for ch in letters:
        if ch not in _LETTER_MATRIX:
            raise ValueError(f"unknown letter {ch!r}; words use S, T and t = T^-1")
        if out and out[-1] == _INVERSE_LETTER[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


class Word(str):
    """A freely reduced word in ``S``, ``T`` and ``t = T**-1``.

    Letters are multiplied left to right as matrices, so ``Word("ST")``
    is the matrix ``S @ T`` and acts by first applying ``T``.
    """

    def __new__(cls, letters: Iterable[str] = ""):
        return super().__new__(cls, free_reduce(letters))

    def inverse(self) -> Word:
        return Word(_INVERSE_LETTER[ch] for ch in reversed(self))

    def __mul__(self, other: str) -> Word:
        return Word(str(self) + str(other))

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(str(base) * abs(k))

    def matrix(self) -> GammaElt:
        return word_to_matrix(self)


def parse_word(text: str) -> Word:
    """Parse a word over ``S``, ``T``, ``t``; whitespace and ``*`` separators are ignored."""
    cleaned = "".join(ch for ch in text if not ch.isspace() and ch != "*")
    bad = set(cleaned) - set(LETTERS)
    if bad:
        raise ValueError(f"cannot parse word {text!r}: unexpected {sorted(bad)}")
    return Word(cleaned)


def word_to_matrix(word: str) -> GammaElt:
    g = IDENTITY
    for ch in word:
        g = g * _LETTER_MATRIX[ch]
    return g


def random_word(rng: random.Random, max_length: int, min_length: int = 0) -> Word:
    n = rng.randint(min_length, max_length)
    return Word(rng.choice(LETTERS) for _ in range(n))


def matrix_to_word(g: GammaElt) -> Word:
    """Write ``g`` as ``T^n1 S T^n2 S ... T^nk`` by the Euclidean algorithm."""
    a, b, c, d = g.as_tuple()
    letters: list[str] = []
    while c != 0:
        n = a // c
        # left-multiply by T^-n then S:  [[a,b],[c,d]] -> [[-c,-d],[a-nc,b-nd]]
        letters.append(("T" if n > 0 else "t") * abs(n))
        letters.append("S")
        a, b, c, d = -c, -d, a - n * c, b - n * d
    # now +-[[1, b/a],[0, 1]] with a = d = +-1
    shift = b * a
    letters.append(("T" if shift > 0 else "t") * abs(shift))
    return Word("".join(letters))


# --- affine maps ------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """``z -> linear * z + trans`` with ``linear`` a sixth root of unity in Z[w]."""

    linear: EisensteinInt
    trans: EisensteinInt

    def __post_init__(self):
        if not self.linear.is_unit():
            raise ValueError(f"linear part {self.linear} is not a unit of Z[w]")

    def compose(self, other: AffineMap) -> AffineMap:
        """``self o other``."""
        return AffineMap(self.linear * other.linear, self.linear * other.trans + self.trans)

    __matmul__ = compose

    def inverse(self) -> AffineMap:
        inv = self.linear.unit_inverse()
        return AffineMap(inv, -(inv * self.trans))

    def __call__(self, u: complex) -> complex:
        return embed(self.linear) * u + embed(self.trans)

    def apply_exact(self, x: EisensteinInt) -> EisensteinInt:
        return self.linear * x + self.trans

    @property
    def exponent(self) -> int:
        return self.linear.unit_exponent()

    def is_identity(self) -> bool:
        return self.linear == ONE and self.trans == ZERO

    def __str__(self) -> str:
        return f"z -> ({self.linear}) z + ({self.trans})"


AFF_ID = AffineMap(ONE, ZERO)
S_BAR = AffineMap(UNITS[3], EisensteinInt(-1, 2))  # -z + (w + w^2)
T_BAR = AffineMap(UNITS[1], ZERO)  # w z
T_BAR_INV = T_BAR.inverse()

_LETTER_AFFINE = {"S": S_BAR, "T": T_BAR, "t": T_BAR_INV}

# generators of Aut+(Z[w]) and Aut+(R)
AFF_a = AffineMap(ONE, ONE)  # z + 1
AFF_b = AffineMap(ONE, UNITS[1])  # z + w
AFF_c = T_BAR  # w z
AFF_A = AffineMap(ONE, EisensteinInt(1, 1))  # z + (w + 1)
AFF_B = AffineMap(ONE, EisensteinInt(-1, 2))  # z + (w + w^2)


def affine_power(m: AffineMap, k: int) -> AffineMap:
    base = m if k >= 0 else m.inverse()
    out = AFF_ID
    for _ in range(abs(k)):
        out = out @ base
    return out


def psi_word(word: str) -> AffineMap:
    out = AFF_ID
    for ch in word:
        out = out @ _LETTER_AFFINE[ch]
    return out


def psi_matrix(g: GammaElt) -> AffineMap:
    return psi_word(matrix_to_word(g))


class NormalForm(NamedTuple):
    """``A**p B**q c**k``: the map ``z -> w**k z + p (w + 1) + q (w + w**2)``."""

    p: int
    q: int
    k: int

    def to_affine(self) -> AffineMap:
        return affine_power(AFF_A, self.p) @ affine_power(AFF_B, self.q) @ affine_power(AFF_c, self.k)


def normal_form(m: AffineMap) -> NormalForm:
    """Unique ``(p, q, k)`` with ``m == A**p B**q c**k``."""
    u, v = m.trans.u, m.trans.v
    # p (1 + w) + q (-1 + 2w) = u + v w
    if not in_R(m.trans):
        raise ValueError(f"{m} is not an element of Aut+(R): translation {m.trans} not in R")
    q = (v - u) // 3
    return NormalForm(u + q, q, m.exponent)


def ell_character(g: GammaElt | str) -> int:
    """Exponent ``k`` with linear part of ``psi(g)`` equal to ``w**k``."""
    m = psi_word(g) if isinstance(g, str) else psi_matrix(g)
    return m.exponent


def ell_value(g: GammaElt | str) -> complex:
    return OMEGA ** ell_character(g)


def in_N(g: GammaElt | str) -> bool:
    m = psi_word(g) if isinstance(g, str) else psi_matrix(g)
    return m.is_identity()


# --- the kernel N and its generators 1 - 6A -----------------------------------


class NMatrix(NamedTuple):
    """The nilpotent core ``A = [[-xy, x^2], [-y^2, xy]]`` of ``1 - 6A``."""

    x: int
    y: int

    def core(self) -> tuple[tuple[int, int], tuple[int, int]]:
        x, y = self.x, self.y
        return ((-x * y, x * x), (-y * y, x * y))

    def matrix(self) -> GammaElt:
        return n_matrix(self.x, self.y)


def _matmul2(p, q):
    return (
        (p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]),
        (p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]),
    )


def n_matrix(x: int, y: int) -> GammaElt:
    if x == 0 and y == 0:
        raise ValueError("(x, y) must be nonzero")
    (a00, a01), (a10, a11) = NMatrix(x, y).core()
    return GammaElt(1 - 6 * a00, -6 * a01, -6 * a10, 1 - 6 * a11)


def core_square(a: NMatrix):
    core = a.core()
    return _matmul2(core, core)


def clifford_bracket(a1: NMatrix, a2: NMatrix) -> tuple[int, bool]:
    """``AB + BA`` for two cores: returns ``(s, True)`` when it equals ``s I``.

    For the matrices as written the scalar comes out as ``-(xq - py)**2``.
    """
    p, q = a1.core(), a2.core()
    pq, qp = _matmul2(p, q), _matmul2(q, p)
    m = [[pq[i][j] + qp[i][j] for j in range(2)] for i in range(2)]
    if m[0][1] == 0 and m[1][0] == 0 and m[0][0] == m[1][1]:
        return m[0][0], True
    return m[0][0], False


# --- reduction into the standard fundamental domain --------------------------


def reduce_to_F(z: complex, max_steps: int = 10_000) -> tuple[GammaElt, complex]:
    """Return ``(g, g z)`` with ``g z`` in the standard fundamental domain.

    Convention: ``-1/2 <= Re < 1/2`` and ``|g z| >= 1``; on the unit circle
    the representative with ``Re >= 0`` is chosen.
    """
    if not z.imag > 0:
        raise ValueError(f"{z} is not in the upper half plane")
    g = IDENTITY
    w = complex(z)
    for _ in range(max_steps):
        n = math.floor(w.real + 0.5)
        if n:
            w -= n
            g = T_INV**n * g if n > 0 else T ** (-n) * g
        if abs(w) < 1.0:
            w = -1.0 / w
            g = S * g
        else:
            break
    else:
        raise RuntimeError(f"reduction of {z} did not terminate")
    if abs(w) == 1.0 and w.real < 0:
        w = -1.0 / w
        g = S * g
        if w.real >= 0.5:
            w -= 1
            g = T_INV * g
    return g, w


def in_standard_F(z: complex, tol: float = 0.0) -> bool:
    return z.imag > 0 and -0.5 - tol <= z.real <= 0.5 + tol and abs(z) >= 1.0 - tol
