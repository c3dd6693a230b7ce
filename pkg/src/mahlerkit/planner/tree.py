"""Matryoshka decomposition: radius classes, point classes, obligations.

The planner applies theorem statements and never proofs.  Stage 1 splits
items by multiplicative classes of spectral radii (first purity theorem),
stage 2 splits a radius class by multiplicatively independent points
(second purity theorem), and leaves carry the obligations that the lifting
theorem reduces the question to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from ..arith.intmatrix import IntMatrix
from ..arith.multiplicative import DependentWitness, lvdp_decompose, mult_indep
from ..arith.rational import factor_rational, format_rational, parse_rational
from ..errors import DomainError, SchemaError
from ..hecke.decide import HeckeItem, hm_family_decision
from ..hecke.quadratic import QuadraticIrrational
from ..systems.points import Admissible, admissible_check, regular_point_check
from ..systems.spectrum import SpectrumReport, radii_mult_classes, spectral_radius

FIRST_PURITY = "[AF3, Theorem 2.4]"
LIFTING = "[AF3, Theorem 2.1]"
SECOND_PURITY = "second purity theorem"
TRANSCENDENCE = "[ABu07] Theorem 4"
ORDER_ONE_PAIR = "[Ni_Liv] Theorem 3.5"
HYPERTRANSCENDENCE = "[Ni84] Theorem 3"
HIGHER_ORDER = "[DHR] Theorem 4.3"
EXPONENT_BOUND = 20


@dataclass(frozen=True)
class EvalItem:
    """One value ``f(alpha)``, or the family ``f^(l)(alpha)`` for ``l >= derivatives_from``."""

    label: str
    fixture: str
    source: Any  # AutomaticSource | MorphicSource | HeckeItem
    point: Fraction
    derivatives_from: int | None = None
    function: str = ""

    @property
    def is_hecke(self) -> bool:
        return isinstance(self.source, HeckeItem)

    @property
    def fname(self) -> str:
        return self.function or f"f_{self.fixture}"

    def T(self) -> IntMatrix:
        return self.source.T

    def scalar_order(self) -> int | None:
        eq = getattr(self.source, "equation", None)
        return None if eq is None else eq.order

    def inhomogeneous(self) -> bool:
        eq = getattr(self.source, "equation", None)
        return eq is not None and eq.is_inhomogeneous()

    def function_names(self, arg: str = "z", q: int | None = None) -> list[str]:
        """Functions whose independence the lifting theorem asks for."""
        order = self.scalar_order() or 1
        q = q or getattr(self.source, "q", None) or 2
        args = [arg] + [f"{arg}^{q**k}" for k in range(1, order)] if not self.inhomogeneous() else [arg]
        if self.derivatives_from is None:
            return [f"{self.fname}({a})" for a in args]
        return [f"{self.fname}^(l)({a}), l >= {self.derivatives_from}" for a in args]

    def to_json(self) -> dict:
        out = {"label": self.label, "fixture": self.fixture, "point": format_rational(self.point)}
        if self.derivatives_from is not None:
            out["derivatives"] = {"from": self.derivatives_from}
        return out


@dataclass(frozen=True)
class Obligation:
    kind: str  # Transcendence | FunctionAlgIndep | ExternalTheorem | RelationFound
    subject: tuple[str, ...]
    citation: str = ""
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "Transcendence":
            out["value"] = self.subject[0]
        elif self.kind == "FunctionAlgIndep":
            out["functions"] = list(self.subject)
        elif self.subject:
            out["subject"] = list(self.subject)
        if self.citation:
            out["citation"] = self.citation
        if self.note:
            out["note"] = self.note
        return out

    def render(self) -> str:
        if self.kind == "Transcendence":
            s = f"Transcendence of {self.subject[0]}"
        elif self.kind == "FunctionAlgIndep":
            s = "Algebraic independence over Qbar(z) of " + "; ".join(self.subject)
        elif self.kind == "ExternalTheorem":
            s = f"External theorem {self.citation} for " + "; ".join(self.subject)
        else:
            s = f"{self.kind}: " + "; ".join(self.subject)
        if self.citation and self.kind != "ExternalTheorem":
            s += f" [{self.citation}]" if not self.citation.startswith("[") else f" {self.citation}"
        if self.note:
            s += f" ({self.note})"
        return s


@dataclass(frozen=True)
class Leaf:
    point: str
    items: tuple[str, ...]
    rule: str
    obligations: tuple[Obligation, ...]
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {
            "point": self.point,
            "items": list(self.items),
            "rule": self.rule,
            "obligations": [o.to_json() for o in self.obligations],
        }
        if self.flags:
            out["flags"] = list(self.flags)
        return out


@dataclass(frozen=True)
class Embedding:
    points: tuple[str, ...]
    items: tuple[str, ...]
    decomposition: dict
    T: tuple[tuple[int, ...], ...]
    base_check: str
    leaf: Leaf

    def to_json(self) -> dict:
        return {
            "kind": "Embedding",
            "points": list(self.points),
            "items": list(self.items),
            "decomposition": self.decomposition,
            "T": [list(r) for r in self.T],
            "base_admissibility": self.base_check,
            "leaf": self.leaf.to_json(),
        }


@dataclass(frozen=True)
class RadiusClass:
    cid: str
    rho: str
    minpoly: tuple[int, ...]
    items: tuple[str, ...]
    points: tuple[str, ...]
    point_certificate: dict
    children: tuple  # Leaf | Embedding

    def to_json(self) -> dict:
        return {
            "id": self.cid,
            "radius": {"rho": self.rho, "minpoly": list(self.minpoly)},
            "items": list(self.items),
            "stage2": {
                "rule": SECOND_PURITY,
                "points": list(self.points),
                "certificate": self.point_certificate,
                "point_classes": [c.to_json() for c in self.children],
            },
        }


@dataclass(frozen=True)
class HeckeNode:
    items: tuple[str, ...]
    decision: dict

    def to_json(self) -> dict:
        return {"kind": "HeckeMahler", "items": list(self.items), "decision": self.decision}


@dataclass(frozen=True)
class DecompositionTree:
    items: tuple[EvalItem, ...]
    item_checks: tuple[dict, ...]
    classes: tuple[RadiusClass, ...]
    radius_certificate: dict
    hecke: HeckeNode | None = None
    conditional: bool = False

    def leaves(self) -> list[Leaf]:
        out = []
        for c in self.classes:
            for ch in c.children:
                out.append(ch.leaf if isinstance(ch, Embedding) else ch)
        return out

    def citations(self) -> list[str]:
        """External theorems the tree rests on, in order of first use."""
        seen: list[str] = []

        def add(c):
            if c and c.startswith("[") and c not in seen:
                seen.append(c)

        if self.classes:
            add(FIRST_PURITY if len(self.classes) > 1 else "")
        for leaf in self.leaves():
            add(LIFTING if leaf.rule.startswith("lifting") else "")
            for o in leaf.obligations:
                add(o.citation)
        return seen

    def to_json(self) -> dict:
        out = {
            "items": [dict(it.to_json(), **chk) for it, chk in zip(self.items, self.item_checks)],
            "stage1": {
                "rule": f"first purity theorem {FIRST_PURITY}",
                "certificate": self.radius_certificate,
                "classes": [c.to_json() for c in self.classes],
            },
            "conditional": self.conditional,
            "external_theorems": self.citations(),
        }
        if self.hecke is not None:
            out["hecke"] = self.hecke.to_json()
        return out

    def render_text(self) -> str:
        n = len(self.items)
        lines = [f"Decomposition of {n} item{'s' if n != 1 else ''}"]
        if len(self.classes) > 1:
            lines.append(f"Applying the first purity theorem {FIRST_PURITY}: {len(self.classes)} radius classes"
                         f", no relation rho_i^a = rho_j^b with a, b <= {self.radius_certificate['exponent_bound']}")
        elif self.classes:
            lines.append("One radius class")
        for c in self.classes:
            lines.append(f"  {c.cid}  rho = {c.rho}  minpoly {list(c.minpoly)}: {', '.join(c.items)}")
            cert = c.point_certificate
            if cert["verdict"] == "Independent":
                lines.append(f"    Applying the {SECOND_PURITY}: points {', '.join(c.points)} multiplicatively independent")
            else:
                lines.append(f"    Points {', '.join(c.points)} dependent, witness {tuple(cert['witness'])}")
            for ch in c.children:
                leaf = ch.leaf if isinstance(ch, Embedding) else ch
                if isinstance(ch, Embedding):
                    d = ch.decomposition
                    lines.append(f"      Embedding of {', '.join(ch.points)} over base ({', '.join(d['base'])}), T = {[list(r) for r in ch.T]}")
                lines.append(f"      at {leaf.point}: {', '.join(leaf.items)}  [{leaf.rule}]")
                for o in leaf.obligations:
                    lines.append(f"        - {o.render()}")
                for fl in leaf.flags:
                    lines.append(f"        ! {fl}")
        if self.hecke is not None:
            d = self.hecke.decision
            lines.append(f"Hecke-Mahler values {', '.join(self.hecke.items)}: {d['verdict']}")
            if "theorem" in d:
                lines.append(f"  by the {d['theorem']}")
            if "note" in d:
                lines.append(f"  {d['note']}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# request parsing


def items_from_request(data: dict) -> list[EvalItem]:
    from ..fixtures.registry import source

    if not isinstance(data, dict) or not isinstance(data.get("items"), list):
        raise SchemaError("expected an object with an 'items' list", "/items")
    out = []
    labels = set()
    for i, it in enumerate(data["items"]):
        path = f"/items/{i}"
        if not isinstance(it, dict):
            raise SchemaError("item must be an object", path)
        try:
            point = parse_rational(it.get("point"))
        except DomainError as exc:
            raise SchemaError(str(exc), f"{path}/point") from exc
        label = it.get("label")
        if not label:
            raise SchemaError("missing label", f"{path}/label")
        if label in labels:
            raise SchemaError(f"duplicate label {label!r}", f"{path}/label")
        labels.add(label)
        der = it.get("derivatives")
        dfrom = None if der is None else int(der.get("from", 0))
        if "hecke" in it:
            omega = QuadraticIrrational.from_json(it["hecke"].get("omega", {}))
            src = HeckeItem(omega, point, label)
            out.append(EvalItem(label, "hecke", src, point, dfrom, it.get("function", f"f[{omega}]")))
            continue
        if "fixture" not in it:
            raise SchemaError("item needs 'fixture' or 'hecke'", path)
        out.append(EvalItem(label, it["fixture"], source(it["fixture"]), point, dfrom, it.get("function", "")))
    if not out:
        raise DomainError("empty request")
    return out


# ---------------------------------------------------------------------------
# planning


def _point_key(p: Fraction):
    """Canonical point order: prime support, then the point itself."""
    return (sorted(factor_rational(abs(p))), abs(p), p < 0)


def _base_key(p: Fraction):
    """Embedding order: points with fewer prime factors first, so they become the base."""
    return (len(factor_rational(abs(p))),) + _point_key(p)


def _item_checks(it: EvalItem) -> dict:
    if it.is_hecke:
        return {"admissibility": "n/a", "regularity": "n/a"}
    pt = it.source.embedded_point(it.point)
    if it.source.equation is None:
        adm = "Declared"  # diagonal specialization of a Cobham system
    else:
        a = admissible_check(it.T(), pt)
        adm = "Admissible" if isinstance(a, Admissible) else type(a).__name__
    r = regular_point_check(it.source.system(), pt)
    return {"admissibility": adm, "regularity": r.to_json()}


def _leaf_for(items: Sequence[EvalItem], point: str) -> Leaf:
    labels = tuple(it.label for it in items)
    if len(items) == 1 and items[0].derivatives_from is None:
        it = items[0]
        return Leaf(point, labels, "transcendence", (Obligation("Transcendence", (it.label,), _transcendence_citation(it)),))
    obligations = [Obligation("Transcendence", (it.label,), _transcendence_citation(it))
                   for it in items if it.derivatives_from is None]
    fns = tuple(f for it in items for f in it.function_names())
    citation, note = _function_citation(items)
    obligations.append(Obligation("FunctionAlgIndep", fns))
    flags = ()
    if citation:
        obligations.append(Obligation("ExternalTheorem", fns, citation, note))
    else:
        flags = ("no cited result covers this function family",)
    return Leaf(point, labels, f"lifting theorem {LIFTING}", tuple(obligations), flags)


def _transcendence_citation(it: EvalItem) -> str:
    return TRANSCENDENCE if not it.is_hecke else ""


def _function_citation(items: Sequence[EvalItem]) -> tuple[str, str]:
    order_one = all(it.scalar_order() == 1 and it.inhomogeneous() for it in items)
    if all(it.derivatives_from is None for it in items) and order_one and len(items) >= 2:
        return ORDER_ONE_PAIR, "inhomogeneous Mahler equations of order one"
    if len(items) == 1 and items[0].derivatives_from is not None:
        it = items[0]
        if order_one:
            return HYPERTRANSCENDENCE, "hypertranscendence from an inhomogeneous order-one equation"
        if (it.scalar_order() or 0) >= 2:
            return HIGHER_ORDER, f"derivatives of a {it.source.q}-Mahler function of order {it.scalar_order()}"
    return "", ""


def _monomial_name(exps: Sequence[int], sign: int = 1) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"z{i + 1}")
        elif e:
            parts.append(f"z{i + 1}^{e}")
    s = "*".join(parts) or "1"
    return s if sign > 0 else f"-{s}"


def embed_dependent_points(items: Sequence[EvalItem]) -> Embedding:
    """Rewrite items at dependent points as functions of an independent base."""
    pts = sorted({it.point for it in items}, key=_base_key)
    dec = lvdp_decompose(pts)
    index = {p: k for k, p in enumerate(pts)}
    labels = tuple(it.label for it in items)
    flags = []
    qs = {getattr(it.source, "q", None) for it in items}
    q = qs.pop() if len(qs) == 1 else None
    if q is None or any(it.source.equation is None for it in items):
        flags.append("embedding needs univariate q-Mahler items with a common q")
    if any(it.derivatives_from is not None for it in items):
        flags.append("derivative families are not embedded")
    s = len(dec.base)
    t = IntMatrix.scalar(s, q or 1)
    base_check = "n/a"
    if q:
        chk = admissible_check(t, list(dec.base))
        base_check = type(chk).__name__ if not isinstance(chk, Admissible) else "Admissible"
        if not isinstance(chk, Admissible):
            flags.append(f"base not admissible: {chk.to_json()}")
    fns: list[str] = []
    for it in items:
        k = index[it.point]
        e = dec.exponents[k]
        sign = dec.signs[k]
        order = 1 if it.inhomogeneous() else (it.scalar_order() or 1)
        for j in range(order):
            m = [x * (q or 1) ** j for x in e]
            fns.append(f"{it.fname}({_monomial_name(m, sign)})")
    obligations = [Obligation("Transcendence", (it.label,), _transcendence_citation(it))
                   for it in items if it.derivatives_from is None]
    obligations.append(Obligation("FunctionAlgIndep", tuple(fns)))
    flags.append("no cited result covers this function family")
    leaf = Leaf(" | ".join(format_rational(p) for p in pts), labels, f"lifting theorem {LIFTING}",
                tuple(obligations), tuple(flags))
    return Embedding(tuple(format_rational(p) for p in pts), labels, dec.to_json(),
                     tuple(tuple(r) for r in t.tolist()), base_check, leaf)


def _point_blocks(points: list[Fraction]) -> tuple[dict, list[list[Fraction]]]:
    """Union-find over supports of a basis of the multiplicative relation lattice."""
    verdict = mult_indep(points)
    if not isinstance(verdict, DependentWitness):
        return verdict.to_json(), [[p] for p in points]
    from ..arith.multiplicative import _exponent_table
    from ..arith.intmatrix import left_kernel

    primes, table = _exponent_table([abs(p) for p in points])
    kernel = left_kernel(IntMatrix(table)) if primes else [tuple(int(i == j) for j in range(len(points))) for i in range(len(points))]
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for v in kernel:
        sup = [i for i, x in enumerate(v) if x]
        for i in sup[1:]:
            parent[find(i)] = find(sup[0])
    groups: dict[int, list[Fraction]] = {}
    for i, p in enumerate(points):
        groups.setdefault(find(i), []).append(p)
    blocks = sorted(groups.values(), key=lambda b: _point_key(b[0]))
    return verdict.to_json(), blocks


def plan(items: Sequence[EvalItem]) -> DecompositionTree:
    items = list(items)
    if not items:
        raise DomainError("plan needs at least one item")
    checks = tuple(_item_checks(it) for it in items)
    conditional = any(c["admissibility"] not in ("Admissible", "n/a") or
                      (isinstance(c["regularity"], dict) and c["regularity"].get("verdict") != "Regular")
                      for c in checks)
    mahler = [it for it in items if not it.is_hecke]
    hecke = [it for it in items if it.is_hecke]

    # stage 1: one spectrum per distinct transformation, first appearance order
    ts: list[tuple] = []
    for it in mahler:
        key = tuple(map(tuple, it.T().tolist()))
        if key not in ts:
            ts.append(key)
    reports: list[SpectrumReport] = [spectral_radius(IntMatrix(list(map(list, k)))) for k in ts]
    classes: list[RadiusClass] = []
    rcert: dict = {"exponent_bound": EXPONENT_BOUND, "classes": [], "witnesses": [], "separated": []}
    if reports:
        rc = radii_mult_classes(reports, EXPONENT_BOUND)
        cls_of_t = {ts[i]: k for k, c in enumerate(rc.classes) for i in c}
        rcert["witnesses"] = [w.to_json() for w in rc.witnesses]
        for k, c in enumerate(rc.classes):
            members = [it for it in mahler if cls_of_t[tuple(map(tuple, it.T().tolist()))] == k]
            rep = reports[c[0]]
            rcert["classes"].append({"id": f"R{k + 1}", "transformations": [[list(r) for r in ts[i]] for i in c]})
            classes.append(_radius_class(f"R{k + 1}", rep, members))
        ids = {k: f"R{k + 1}" for k in range(len(rc.classes))}
        cls_idx = {i: k for k, c in enumerate(rc.classes) for i in c}
        seps = set()
        for i, j in rc.separations:
            a, b = cls_idx[i], cls_idx[j]
            if a != b:
                seps.add((min(a, b), max(a, b)))
        rcert["separated"] = [[ids[a], ids[b]] for a, b in sorted(seps)]

    hnode = None
    if hecke:
        dec = hm_family_decision([it.source for it in hecke])
        hnode = HeckeNode(tuple(it.label for it in hecke), dec.to_json())
    return DecompositionTree(tuple(items), checks, tuple(classes), rcert, hnode, conditional)


def _radius_class(cid: str, rep: SpectrumReport, members: list[EvalItem]) -> RadiusClass:
    pts = sorted({it.point for it in members}, key=_point_key)
    cert, blocks = _point_blocks(pts)
    children = []
    for block in blocks:
        block_items = [it for it in members if it.point in block]
        if len(block) == 1:
            children.append(_leaf_for(block_items, format_rational(block[0])))
        else:
            children.append(embed_dependent_points(block_items))
    return RadiusClass(cid, rep.rho.mid_decimal(20), rep.minpoly, tuple(it.label for it in members),
                       tuple(format_rational(p) for p in pts), cert, tuple(children))


def plan_request(data: dict) -> DecompositionTree:
    return plan(items_from_request(data))
