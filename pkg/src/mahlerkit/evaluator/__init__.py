"""Certified evaluation of Mahler, morphic and Hecke-Mahler series."""

from .core import (
    CertifiedValue,
    cobham_residual,
    companion_values,
    eval_cobham,
    eval_hecke_mahler,
    eval_residual,
    eval_series,
    system_residual,
    tail_bound,
)
from .streams import (
    CoefficientStream,
    closed_form_stream,
    derivative_stream,
    dfao_stream,
    hecke_mahler_stream,
    morphic_stream,
)

__all__ = [
    "CertifiedValue",
    "CoefficientStream",
    "closed_form_stream",
    "cobham_residual",
    "companion_values",
    "derivative_stream",
    "dfao_stream",
    "eval_cobham",
    "eval_hecke_mahler",
    "eval_residual",
    "eval_series",
    "hecke_mahler_stream",
    "morphic_stream",
    "system_residual",
    "tail_bound",
]
