"""Polynomial-relation hunting over certified values."""

from .hunt import (
    DEFAULT_DEGREE,
    DEFAULT_HEIGHT,
    Found,
    HuntRequest,
    NoneUpTo,
    hunt,
    monomial_balls,
    monomials,
    render_polynomial,
)

__all__ = [
    "DEFAULT_DEGREE",
    "DEFAULT_HEIGHT",
    "Found",
    "HuntRequest",
    "NoneUpTo",
    "hunt",
    "monomial_balls",
    "monomials",
    "render_polynomial",
]
