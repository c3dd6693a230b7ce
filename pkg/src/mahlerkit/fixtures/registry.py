"""Bundled fixtures.  Every fixture re-verifies itself when loaded."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

from ..arith.intmatrix import IntMatrix
from ..errors import DomainError, SchemaError
from ..evaluator.streams import CoefficientStream, dfao_stream, hecke_mahler_stream, morphic_stream
from ..series.mahler import Ok, verify_identity
from ..systems.gauge import GaugeCertificate, reverify
from ..systems.scalar import ScalarMahlerEq, companion_system, equation_from_json, equation_residual
from ..systems.spectrum import class_m_check
from ..systems.system import MahlerSystem
from ..words.cobham import CobhamSystem, cobham_construct
from ..words.dfao import Dfao
from ..words.morphism import Morphism
from ..words.sierpinski import SIERPINSKI_T, sierpinski_factor, sierpinski_series

EQUATION_CHECK_ORDER = 64
COBHAM_CHECK_ORDER = 30


@dataclass(frozen=True)
class AutomaticSource:
    """A q-automatic sequence with a scalar Mahler equation for its series."""

    name: str
    dfao: Dfao
    equation: ScalarMahlerEq

    @property
    def T(self) -> IntMatrix:
        return IntMatrix([[self.equation.q]])

    @property
    def q(self) -> int:
        return self.equation.q

    def system(self) -> MahlerSystem:
        return companion_system(self.equation)

    def stream(self) -> CoefficientStream:
        return dfao_stream(self.dfao, self.name)

    def embedded_point(self, alpha) -> list[Fraction]:
        return [Fraction(alpha)]


@dataclass(frozen=True)
class MorphicSource:
    """A coded fixed point of a morphism, read on the diagonal of its Cobham system."""

    name: str
    cobham: CobhamSystem

    @property
    def T(self) -> IntMatrix:
        return self.cobham.T

    @property
    def q(self) -> None:
        return None

    @property
    def equation(self) -> None:
        return None

    def system(self) -> MahlerSystem:
        return self.cobham.system

    def stream(self) -> CoefficientStream:
        return morphic_stream(self.cobham.morphism, self.name)

    def embedded_point(self, alpha) -> list[Fraction]:
        return [Fraction(alpha)] * self.T.nrows


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    payload: Any
    provenance: str
    data: dict = field(repr=False, compare=False, default_factory=dict)
    verification: Any = None


def _path(name: str):
    return resources.files("mahlerkit.fixtures").joinpath(f"{name}.json")


def fixture_names() -> list[str]:
    root = resources.files("mahlerkit.fixtures")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _require(data, key, path=""):
    if key not in data:
        raise SchemaError(f"missing key {key!r}", f"{path}/{key}")
    return data[key]


def _fail(name, res):
    raise DomainError(f"fixture {name!r} failed self-verification: {res}")


def build_fixture(data: dict, name: str | None = None) -> Fixture:
    """Construct and self-verify a fixture from its JSON document."""
    if not isinstance(data, dict):
        raise SchemaError("fixture must be an object", "/")
    kind = _require(data, "kind")
    name = name or data.get("name", "")
    prov = data.get("provenance", "")
    if kind == "automatic":
        dfao = Dfao.from_json(_require(data, "dfao"))
        eq = equation_from_json(_require(data, "equation"), name, "/equation")
        res = equation_residual(eq, dfao.terms(EQUATION_CHECK_ORDER + 1), EQUATION_CHECK_ORDER)
        if not res.is_zero():
            _fail(name, f"equation residual {res.render()}")
        return Fixture(name, kind, AutomaticSource(name, dfao, eq), prov, data, Ok(EQUATION_CHECK_ORDER))
    if kind == "morphic":
        m = Morphism.from_json(_require(data, "morphism"), name)
        c = cobham_construct(m)
        res = c.check(COBHAM_CHECK_ORDER)
        if not isinstance(res, Ok):
            _fail(name, res)
        res = c.check_specialization(COBHAM_CHECK_ORDER)
        if not isinstance(res, Ok):
            _fail(name, res)
        # the construction is self-consistent for any morphism; pin the word itself
        ref = data.get("prefix")
        if ref is not None and m.prefix(len(ref)) != ref:
            _fail(name, f"fixed point starts {m.prefix(len(ref))!r}, expected {ref!r}")
        return Fixture(name, kind, MorphicSource(name, c), prov, data, res)
    if kind == "matrix":
        t = IntMatrix(_require(data, "T"))
        verdict = class_m_check(t)
        want = data.get("expect")
        if want is not None:
            got = verdict.to_json()
            got["charpoly"] = list(characteristic_polynomial_coeffs(t))
            if any(got.get(k) != v for k, v in want.items()):
                _fail(name, f"classification {got} differs from {want}")
        return Fixture(name, kind, t, prov, data, verdict)
    if kind == "sierpinski":
        order = int(data.get("order", 40))
        f = sierpinski_series(order)
        rhs = (sierpinski_factor() * f.substitute_monomial(SIERPINSKI_T)).truncate(order)
        res = verify_identity(f, rhs, order)
        if not isinstance(res, Ok):
            _fail(name, res)
        return Fixture(name, kind, (SIERPINSKI_T, sierpinski_factor()), prov, data, res)
    if kind == "gauge":
        sysname = _require(data, "system")
        src = load(sysname).payload
        cert = reverify(src.system(), _require(data, "certificate"))
        if not isinstance(cert, GaugeCertificate):
            _fail(name, cert)
        return Fixture(name, kind, cert, prov, data, cert)
    if kind == "hecke":
        from ..hecke.decide import HeckeItem
        from ..hecke.quadratic import QuadraticIrrational
        from ..arith.rational import parse_rational

        items = []
        for i, it in enumerate(_require(data, "items")):
            try:
                items.append(HeckeItem(QuadraticIrrational.from_json(it["omega"]), parse_rational(it["alpha"]), it.get("label", "")))
            except (KeyError, DomainError) as exc:
                raise SchemaError(str(exc), f"/items/{i}") from exc
        # the series must agree with floor(n omega) on its first terms
        for it in items:
            hecke_mahler_stream(it.omega)
        return Fixture(name, kind, tuple(items), prov, data, Ok(len(items)))
    if kind in ("plan_request", "plan_golden"):
        return Fixture(name, kind, data, prov, data, None)
    raise SchemaError(f"unknown fixture kind {kind!r}", "/kind")


def characteristic_polynomial_coeffs(t: IntMatrix) -> tuple[int, ...]:
    from ..systems.spectrum import characteristic_polynomial

    return tuple(int(c) for c in characteristic_polynomial(t).all_coeffs())


@lru_cache(maxsize=None)
def load(name: str) -> Fixture:
    p = _path(name)
    if not p.is_file():
        raise DomainError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
    return build_fixture(json.loads(p.read_text()), name)


def load_json(name: str) -> dict:
    return json.loads(_path(name).read_text())


def source(name: str) -> AutomaticSource | MorphicSource:
    fx = load(name)
    if fx.kind not in ("automatic", "morphic"):
        raise DomainError(f"fixture {name!r} is a {fx.kind}, not a sequence")
    return fx.payload
