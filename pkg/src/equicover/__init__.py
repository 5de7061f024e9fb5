"""Equivariant covering of the excised hexagonal lattice by the upper half plane."""
from .covering import CoverContext, PhiResult, phi, phi_prime
from .elliptic import EllipticContext, klein_j, make_context, modular_lambda
from .gamma import AffineMap, GammaElt, NormalForm, normal_form, psi_matrix, psi_word
from .lattice import OMEGA, EisensteinInt, ExcisedPoint
from .sl3rep import CartanElt, lambda_rep, wp_trace_sum

__all__ = [
    "OMEGA",
    "AffineMap",
    "CartanElt",
    "CoverContext",
    "EisensteinInt",
    "EllipticContext",
    "ExcisedPoint",
    "GammaElt",
    "NormalForm",
    "PhiResult",
    "klein_j",
    "lambda_rep",
    "make_context",
    "modular_lambda",
    "normal_form",
    "phi",
    "phi_prime",
    "psi_matrix",
    "psi_word",
    "wp_trace_sum",
]
