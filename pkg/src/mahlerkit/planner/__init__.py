"""Matryoshka planner: reduce joint independence questions to obligations."""

from .report import Evidence, discharge, render_report, report
from .tree import (
    DecompositionTree,
    Embedding,
    EvalItem,
    Leaf,
    Obligation,
    embed_dependent_points,
    items_from_request,
    plan,
    plan_request,
)

__all__ = [
    "DecompositionTree",
    "Embedding",
    "EvalItem",
    "Evidence",
    "Leaf",
    "Obligation",
    "discharge",
    "embed_dependent_points",
    "items_from_request",
    "plan",
    "plan_request",
    "render_report",
    "report",
]
