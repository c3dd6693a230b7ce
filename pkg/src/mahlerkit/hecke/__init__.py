"""Quadratic irrationals and decision rules for Hecke-Mahler values."""

from .decide import (
    Dependent,
    HeckeItem,
    Independent,
    Unknown,
    hm_family_decision,
    hm_pair_decision,
    pair_relation,
)
from .quadratic import (
    QuadraticIrrational,
    cf_expansion,
    convergents,
    equiv_pm_mod_z,
    from_cf,
    same_field,
)

__all__ = [
    "Dependent",
    "HeckeItem",
    "Independent",
    "QuadraticIrrational",
    "Unknown",
    "cf_expansion",
    "convergents",
    "equiv_pm_mod_z",
    "from_cf",
    "hm_family_decision",
    "hm_pair_decision",
    "pair_relation",
    "same_field",
]
