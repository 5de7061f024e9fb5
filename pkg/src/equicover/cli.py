"""Command line entry point: ``equicover {eval,verify,group,grid}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import colorsys
import json
import math
import re
import sys
from dataclasses import dataclass

from . import checks, covering, elliptic, gamma
from .lattice import OMEGA

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
FUNCTIONS = ("wp", "wp-prime", "lambda", "j", "phi", "phi-prime")
MAX_GRID = 4096

_ALIASES = {
    "w": OMEGA,
    "omega": OMEGA,
    "ω": OMEGA,
    "w2": OMEGA * OMEGA,
    "omega2": OMEGA * OMEGA,
    "ω²": OMEGA * OMEGA,
    "i": 1j,
}
_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"^(?P<re>{_NUMBER})?(?:(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])?i)?$")


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``bi``, ``a`` or one of the aliases ``w``/``omega``/``w2``."""
    s = text.strip().replace(" ", "")
    if s.lower() in _ALIASES:
        return complex(_ALIASES[s.lower()])
    m = _COMPLEX.match(s)
    if not s or m is None:
        raise UsageError(f"cannot parse complex number {text!r}; expected a+bi")
    re_part, im_part = m.group("re"), m.group("im")
    if s.endswith("i"):
        if im_part is None:
            # "2.5i": the whole number is imaginary
            if re_part is None:
                return 1j
            return complex(0, float(re_part))
        im = float(im_part + "1") if im_part in "+-" else float(im_part)
        return complex(float(re_part) if re_part else 0.0, im)
    return complex(float(re_part), 0.0)


def format_complex(z: complex, digits: int = 15) -> str:
    re_s = f"{z.real:#.{digits}g}"
    im_s = f"{abs(z.imag):#.{digits}g}"
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{re_s}{sign}{im_s}i"


# --- evaluation --------------------------------------------------------------


@dataclass
class Evaluator:
    tol: float = 1e-9

    def __post_init__(self):
        self.ell = elliptic.make_context(OMEGA + 1, OMEGA * OMEGA - 1)
        self.cover = (
            covering.default_context()
            if self.tol == covering.CoverContext.accept
            else covering.CoverContext(accept=self.tol)
        )

    def __call__(self, name: str, z: complex) -> tuple[complex, float]:
        """Value and residual (zero where no iteration is involved)."""
        if name == "wp":
            return self.ell.wp(z), 0.0
        if name == "wp-prime":
            return self.ell.wp_prime(z), 0.0
        if name == "lambda":
            return elliptic.modular_lambda(z), 0.0
        if name == "j":
            return elliptic.klein_j(z), 0.0
        if name == "phi":
            r = covering.phi(z, self.cover)
            return r.value, r.residual
        if name == "phi-prime":
            return covering.phi_prime(z, self.cover), 0.0
        raise UsageError(f"unknown function {name!r}")


_DOMAIN_ERRORS = (ValueError, ZeroDivisionError, ArithmeticError)


def cmd_eval(args) -> int:
    z = parse_complex(args.point)
    value, residual = Evaluator(args.tol)(args.function, z)
    print(format_complex(value))
    if args.function == "phi":
        print(f"residual {residual:.3e}")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = checks.SUITES if args.suite == "all" else (args.suite,)
    reports = [checks.run_suite(n, cutoff=args.cutoff) for n in names]
    payload = reports[0].as_dict() if len(reports) == 1 else [r.as_dict() for r in reports]
    print(json.dumps(payload, indent=2))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_group(args) -> int:
    word = gamma.parse_word(args.word)
    m = gamma.psi_word(word)
    nf = gamma.normal_form(m)
    g = word.matrix()
    print(f"word      {word or '(empty)'}")
    print(f"matrix    {list(g.as_tuple())}")
    print(f"affine    {m}")
    print(f"normal    p={nf.p} q={nf.q} k={nf.k}")
    print(f"ell       {gamma.ell_character(g)}")
    print(f"in_N      {'true' if gamma.in_N(g) else 'false'}")
    return EXIT_OK


# --- grids -------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (1 <= self.nx <= MAX_GRID and 1 <= self.ny <= MAX_GRID):
            raise UsageError(f"nx, ny must lie in [1, {MAX_GRID}]")
        if not (self.re_min <= self.re_max and self.im_min <= self.im_max):
            raise UsageError("grid bounds are reversed")

    def axis(self, lo: float, hi: float, n: int) -> list[float]:
        return [lo] if n == 1 else [lo + (hi - lo) * k / (n - 1) for k in range(n)]

    def nodes(self) -> list[complex]:
        """Row-major: rows run up the imaginary axis, columns along the real axis."""
        xs = self.axis(self.re_min, self.re_max, self.nx)
        ys = self.axis(self.im_min, self.im_max, self.ny)
        return [complex(x, y) for y in ys for x in xs]


def evaluate_grid(function: str, spec: GridSpec, tol: float = 1e-9) -> list[tuple[complex, complex, float]]:
    if function in ("lambda", "j", "phi", "phi-prime") and spec.im_min <= 0:
        raise UsageError("grids of modular functions need im_min > 0")
    ev = Evaluator(tol)
    out = []
    for z in spec.nodes():
        value, residual = ev(function, z)
        out.append((z, value, residual))
    return out


def grid_csv(rows) -> str:
    lines = ["re,im,val_re,val_im,residual"]
    for z, v, r in rows:
        lines.append(f"{z.real:.16e},{z.imag:.16e},{v.real:.16e},{v.imag:.16e},{r:.16e}")
    return "\n".join(lines) + "\n"


def domain_color(v: complex) -> tuple[int, int, int]:
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        return (255, 255, 255)
    hue = (math.atan2(v.imag, v.real) / (2 * math.pi)) % 1.0
    light = 0.1 + 0.8 * (2 / math.pi) * math.atan(abs(v))
    r, g, b = colorsys.hls_to_rgb(hue, light, 1.0)
    return round(255 * r), round(255 * g), round(255 * b)


def grid_ppm(rows, spec: GridSpec) -> bytes:
    header = f"P6\n{spec.nx} {spec.ny}\n255\n".encode("ascii")
    pixels = bytearray()
    # top of the image is im_max
    for j in reversed(range(spec.ny)):
        for i in range(spec.nx):
            pixels.extend(domain_color(rows[j * spec.nx + i][1]))
    return header + bytes(pixels)


def cmd_grid(args) -> int:
    spec = GridSpec(args.re_min, args.re_max, args.im_min, args.im_max, args.nx, args.ny)
    rows = evaluate_grid(args.function, spec, args.tol)
    text = grid_csv(rows)
    try:
        if args.out:
            with open(args.out, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if args.ppm:
            with open(args.ppm, "wb") as fh:
                fh.write(grid_ppm(rows, spec))
    except OSError as exc:
        print(f"equicover: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=covering.CoverContext.accept,
                        help="acceptance tolerance for the phi inversion (relative)")
    common.add_argument("--cutoff", type=int, default=None, help="lattice-sum cutoff for the sl3 suite")

    parser = argparse.ArgumentParser(prog="equicover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a function at one point")
    p.add_argument("function", choices=FUNCTIONS)
    p.add_argument("point", help="complex number a+bi, or w / omega")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite, print a JSON report")
    p.add_argument("suite", choices=(*checks.SUITES, "all"))
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("group", parents=[common], help="image of a word in S, T, t = T^-1")
    p.add_argument("word")
    p.set_defaults(run=cmd_group)

    p = sub.add_parser("grid", parents=[common], help="tabulate a function on a rectangular grid")
    p.add_argument("function", choices=FUNCTIONS)
    p.add_argument("--re-min", type=float, default=-0.5)
    p.add_argument("--re-max", type=float, default=0.5)
    p.add_argument("--im-min", type=float, default=0.9)
    p.add_argument("--im-max", type=float, default=2.0)
    p.add_argument("--nx", type=int, default=32)
    p.add_argument("--ny", type=int, default=32)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--ppm", help="also write a domain-coloring image (P6)")
    p.set_defaults(run=cmd_grid)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None and not args.tol > 0:
        parser.error("--tol must be positive")
    if args.cutoff is not None and args.cutoff < 1:
        parser.error("--cutoff must be at least 1")
    try:
        return args.run(args)
    except _DOMAIN_ERRORS as exc:
        print(f"equicover: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
