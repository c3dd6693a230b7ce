"""Exact and certified arithmetic: rationals, balls, integer matrices, lattices."""

from .ball import Ball
from .intmatrix import IntMatrix, left_kernel, smith_normal_form
from .lattice import RelationCertificate, find_integer_relation, lll_reduce
from .multiplicative import (
    DependentWitness,
    ExponentDecomposition,
    Independent,
    lvdp_decompose,
    mult_indep,
)
from .rational import factor_rational, format_rational, parse_rational

__all__ = [
    "Ball",
    "DependentWitness",
    "ExponentDecomposition",
    "Independent",
    "IntMatrix",
    "RelationCertificate",
    "factor_rational",
    "find_integer_relation",
    "format_rational",
    "left_kernel",
    "lll_reduce",
    "lvdp_decompose",
    "mult_indep",
    "parse_rational",
    "smith_normal_form",
]
