"""Discharging leaves empirically and assembling the verdict document."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..arith.rational import format_rational
from ..evaluator.core import CertifiedValue, eval_hecke_mahler, eval_series
from ..evaluator.streams import derivative_stream
from ..relations.hunt import Found, HuntRequest, NoneUpTo, hunt
from .tree import DecompositionTree, EvalItem, Leaf

VALUE_PREC = 256
PAIR_PREC = 1200
HECKE_PREC = 400
DERIVATIVES_SAMPLED = 3


@dataclass(frozen=True)
class Evidence:
    where: str
    labels: tuple[str, ...]
    result: Found | NoneUpTo

    def to_json(self) -> dict:
        r = self.result
        out = {"where": self.where, "values": list(self.labels), "D": r.request.degree, "H": r.request.height,
               "p": r.request.precision()}
        if isinstance(r, Found):
            out["verdict"] = "Found"
            out["polynomial"] = r.polynomial()
            out["coefficients"] = list(r.coefficients)
        else:
            out["verdict"] = "NoneUpTo"
        return out


def item_values(it: EvalItem, p: int) -> list[tuple[str, CertifiedValue]]:
    """The value, or the first sampled derivative values, of one item."""
    if it.is_hecke:
        return [(it.label, eval_hecke_mahler(it.source.omega, it.point, p))]
    s = it.source.stream()
    if it.derivatives_from is None:
        return [(it.label, eval_series(s, it.point, p))]
    for _ in range(it.derivatives_from):
        s = derivative_stream(s)
    out = []
    for k in range(DERIVATIVES_SAMPLED):
        l = it.derivatives_from + k
        out.append((f"{it.fname}^({l})({format_rational(it.point)})", eval_series(s, it.point, p)))
        s = derivative_stream(s)
    return out


def _hunt(where, named, degree, height) -> Evidence:
    labels = tuple(n for n, _ in named)
    vals = tuple(v for _, v in named)
    return Evidence(where, labels, hunt(HuntRequest(vals, degree, height, labels=labels)))


def discharge_leaf(leaf: Leaf, items: dict[str, EvalItem]) -> list[Evidence]:
    """Degree-1 null hunts for transcendence, a degree-3 hunt for value pairs."""
    out = []
    members = [items[l] for l in leaf.items]
    plain = [it for it in members if it.derivatives_from is None]
    for it in plain:
        out.append(_hunt(leaf.point, item_values(it, VALUE_PREC), 1, 10**4))
    if len(plain) >= 2:
        named = [nv for it in plain for nv in item_values(it, PAIR_PREC)]
        out.append(_hunt(leaf.point, named, 3, 10**4))
    for it in members:
        if it.derivatives_from is not None:
            out.append(_hunt(leaf.point, item_values(it, VALUE_PREC), 1, 10**4))
    return out


def discharge(tree: DecompositionTree, skip: Sequence[str] = ()) -> list[Evidence]:
    """Evaluate and hunt on every leaf whose point is not listed in ``skip``."""
    items = {it.label: it for it in tree.items}
    out: list[Evidence] = []
    for leaf in tree.leaves():
        if leaf.point in skip or "*" in skip:
            continue
        out.extend(discharge_leaf(leaf, items))
    if tree.hecke is not None and "hecke" not in skip and "*" not in skip:
        d = tree.hecke.decision
        hitems = [items[l] for l in tree.hecke.items]
        if d["verdict"] == "Dependent":
            hitems = [hitems[i] for i in d["witness"]["items"]]
            named = [nv for it in hitems for nv in item_values(it, HECKE_PREC)]
            out.append(_hunt("hecke", named, 1, 10))
        else:
            named = [nv for it in hitems for nv in item_values(it, VALUE_PREC)]
            out.append(_hunt("hecke", named, 1, 10**4))
    return out


def _witness(ev: Evidence) -> tuple[int, ...]:
    r = ev.result
    coeffs = dict(zip(r.monomials, r.coefficients))
    n = len(ev.labels)
    lin = [coeffs.get(tuple(int(i == j) for j in range(n)), 0) for i in range(n)]
    const = coeffs.get((0,) * n, 0)
    nonlinear = any(c for e, c in coeffs.items() if sum(e) > 1)
    if nonlinear:
        return tuple(r.coefficients)
    return tuple(lin + ([const] if const else []))


def report(tree: DecompositionTree, evidence: Sequence[Evidence]) -> dict:
    flags = []
    for leaf in tree.leaves():
        flags.extend(f"{leaf.point}: {f}" for f in leaf.flags)
    if tree.hecke is not None and tree.classes:
        flags.append("no theorem combines Hecke-Mahler values with Mahler values")
    found = [e for e in evidence if isinstance(e.result, Found)]
    citations = tree.citations()
    obligations = [{"id": f"O{k + 1}", "citation": c} for k, c in enumerate(citations)]
    doc: dict = {"conditional_on": obligations, "evidence": [e.to_json() for e in evidence], "flags": flags}
    hecke = tree.hecke.decision if tree.hecke is not None else None
    if found or (hecke and hecke["verdict"] == "Dependent"):
        doc["verdict"] = "Dependent"
        if found:
            w = _witness(found[0])
            doc["relation"] = found[0].to_json()
            doc["summary"] = f"Dependent, witness ({','.join(str(c) for c in w)})"
        else:
            doc["summary"] = f"Dependent by the {hecke['theorem']} (numeric relation not confirmed)"
        return doc
    if not evidence:
        doc["verdict"] = "Inconclusive"
        doc["summary"] = "Inconclusive: every leaf was skipped"
        return doc
    if flags or (hecke and hecke["verdict"] == "Unknown"):
        doc["verdict"] = "Inconclusive"
        reason = hecke["note"] if hecke and hecke["verdict"] == "Unknown" else flags[0]
        doc["summary"] = f"Inconclusive: {reason}"
        return doc
    doc["verdict"] = "Independent"
    if obligations:
        span = "O1" if len(obligations) == 1 else f"O1…O{len(obligations)}"
        doc["summary"] = f"Independent, conditional on obligations {span} (citations attached)"
    else:
        doc["summary"] = f"Independent by the {hecke['theorem']}" if hecke else "Independent"
    return doc


def render_report(doc: dict) -> str:
    lines = [doc["summary"]]
    for o in doc["conditional_on"]:
        lines.append(f"  {o['id']}: {o['citation']}")
    for e in doc["evidence"]:
        tail = f"found {e['polynomial']}" if e["verdict"] == "Found" else "no relation"
        lines.append(f"  hunt at {e['where']} over {', '.join(e['values'])} (D={e['D']}, H={e['H']}, p={e['p']}): {tail}")
    for f in doc["flags"]:
        lines.append(f"  ! {f}")
    return "\n".join(lines) + "\n"
