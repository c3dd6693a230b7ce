"""Certified computations around Mahler functional equations."""

__version__ = "0.1.0"
