"""Mahler systems: construction, iteration, spectra, gauges and point checks."""

from .gauge import GaugeCertificate, reverify, verify_gauge
from .points import (
    Admissible,
    Fails,
    Regular,
    Singular,
    Unknown,
    admissible_check,
    apply_power,
    regular_point_check,
)
from .scalar import ScalarMahlerEq, companion_system, poly, regular_singular_sufficient
from .spectrum import (
    InM,
    NotInM,
    RadiusClasses,
    SpectrumReport,
    class_m_check,
    radii_mult_classes,
    spectral_radius,
)
from .system import MahlerSystem, derivative_system, iterate_system

__all__ = [
    "Admissible",
    "Fails",
    "GaugeCertificate",
    "InM",
    "MahlerSystem",
    "NotInM",
    "RadiusClasses",
    "Regular",
    "ScalarMahlerEq",
    "Singular",
    "SpectrumReport",
    "Unknown",
    "admissible_check",
    "apply_power",
    "class_m_check",
    "companion_system",
    "derivative_system",
    "iterate_system",
    "poly",
    "radii_mult_classes",
    "regular_point_check",
    "regular_singular_sufficient",
    "reverify",
    "spectral_radius",
    "verify_gauge",
]
