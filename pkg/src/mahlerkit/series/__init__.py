"""Truncated Puiseux series, rational functions and Mahler fixed points."""

from .mahler import Mismatch, Ok, mahler_rhs, solve_mahler_fixed_point, verify_identity
from .numberfield import QQ, QQ_J, NumberField, NumberFieldElem
from .puiseux import PuiseuxSeries
from .ratfunc import RationalFunction, RationalFunctionMatrix


def substitute_monomial(f: PuiseuxSeries, t) -> PuiseuxSeries:
    """``f(Tz)`` under the row convention ``(Tz)_i = prod_j z_j^{T_ij}``."""
    return f.substitute_monomial(t)


__all__ = [
    "Mismatch",
    "NumberField",
    "NumberFieldElem",
    "Ok",
    "PuiseuxSeries",
    "QQ",
    "QQ_J",
    "RationalFunction",
    "RationalFunctionMatrix",
    "mahler_rhs",
    "solve_mahler_fixed_point",
    "substitute_monomial",
    "verify_identity",
]
