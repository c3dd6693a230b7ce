"""``mahlerkit`` command line: one subcommand per module operation.

Exit codes: 0 success, 1 a verification that ran and failed, 2 domain or
schema error, 3 precision error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import jsonschema

from ..arith.ball import Ball
from ..arith.multiplicative import DependentWitness, mult_indep
from ..arith.rational import format_rational, parse_rational
from ..errors import DomainError, MahlerError, PrecisionError, SchemaError

EXIT_OK, EXIT_FAILED, EXIT_DOMAIN, EXIT_PRECISION = 0, 1, 2, 3


# -- json helpers --------------------------------------------------------------

def schema(name: str) -> dict:
    return json.loads(resources.files("mahlerkit.schemas").joinpath(f"{name}.schema.json").read_text())


def validate(doc: Any, name: str) -> None:
    """Raise :class:`SchemaError` at the JSON pointer of the first violation."""
    v = jsonschema.Draft202012Validator(schema(name))
    errors = sorted(v.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        e = errors[0]
        path = "/" + "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(e.message, path)


def read_document(arg: str) -> Any:
    """A JSON file path, or the name of a bundled fixture."""
    from ..fixtures.registry import fixture_names, load_json

    p = Path(arg)
    if p.is_file():
        try:
            return json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}", "/") from exc
    if arg in fixture_names():
        return load_json(arg)
    raise DomainError(f"no such file or fixture: {arg!r}")


def _rat(text: str) -> Fraction:
    return parse_rational(text)


# -- subcommands -----------------------------------------------------------------

def cmd_eval(args) -> tuple[dict, str]:
    from ..evaluator import derivative_stream, eval_hecke_mahler, eval_series
    from ..fixtures.registry import build_fixture, load

    p = args.prec
    if p < 1:
        raise DomainError("--prec must be positive")
    at = _rat(args.at) if args.at is not None else None
    fx = load(args.source) if not Path(args.source).is_file() else build_fixture(read_document(args.source))
    results = []
    if fx.kind == "hecke":
        for it in fx.payload:
            a = at if at is not None else it.alpha
            cv = eval_hecke_mahler(it.omega, a, p)
            results.append({"source": it.label or f"f[{it.omega}]", "at": format_rational(a), **cv.to_json()})
    elif fx.kind in ("automatic", "morphic"):
        if at is None:
            raise DomainError("--at is required for sequence fixtures")
        s = fx.payload.stream()
        for _ in range(args.derivative):
            s = derivative_stream(s)
        cv = eval_series(s, at, p)
        out = {"source": fx.name, "at": format_rational(at), **cv.to_json()}
        if args.derivative:
            out["derivative"] = args.derivative
        results.append(out)
    else:
        raise DomainError(f"fixture kind {fx.kind!r} cannot be evaluated")
    if len(results) == 1:
        validate(results[0], "eval-result")
        doc = results[0]
    else:
        doc = {"results": results}
        validate(doc, "eval-results")
    text = "\n".join(f"{r['source']} at {r['at']} = {r['value']['mid']} +/- {r['value']['rad']} ({r['terms']} terms)" for r in results)
    return doc, text


def cmd_cobham(args) -> tuple[dict, str]:
    from ..words.cobham import cobham_construct
    from ..words.morphism import Morphism

    data = read_document(args.morphism)
    if isinstance(data, dict) and "morphism" in data:
        data = data["morphism"]
    validate(data, "morphism")
    c = cobham_construct(Morphism.from_json(data, Path(args.morphism).stem))
    res = c.check(args.verify_order)
    display = c.A.render()
    doc = {
        "T": c.T.tolist(),
        "A": [[str(x) for x in row] for row in display],
        "variables": [f"z{i}" for i in range(len(c.morphism.alphabet))],
        "check": res.to_json(),
    }
    validate(doc, "cobham-result")
    text = f"T = {doc['T']}\nA = {doc['A']}\ncheck: {doc['check']}"
    return doc, text


def cmd_classify(args) -> tuple[dict, str]:
    from ..arith.intmatrix import IntMatrix
    from ..systems.spectrum import InM, class_m_check

    data = read_document(args.matrix)
    if isinstance(data, list):
        data = {"T": data}
    validate(data, "matrix")
    rows = data["T"]
    if len({len(r) for r in rows}) != 1:
        raise SchemaError("rows have different lengths", "/T")
    v = class_m_check(IntMatrix(rows))
    doc = v.to_json()
    validate(doc, "classify-result")
    text = doc["verdict"] + (f" ({doc['reason']}{': ' + doc['detail'] if doc.get('detail') else ''})" if "reason" in doc else "")
    if isinstance(v, InM):
        text += f", rho = {v.rho.rho.mid_decimal(30)}"
    return doc, text


def cmd_indep(args) -> tuple[dict, str]:
    pts = [_rat(x) for x in args.points]
    v = mult_indep(pts)
    doc = {"points": [format_rational(p) for p in pts], **v.to_json()}
    validate(doc, "indep-result")
    if isinstance(v, DependentWitness):
        text = f"Dependent, witness {tuple(v.exponents)}"
    else:
        text = "Independent"
    return doc, text


def cmd_plan(args) -> tuple[dict, str]:
    from ..planner import discharge, plan_request, render_report, report

    data = read_document(args.request)
    validate(data, "plan-request")
    tree = plan_request(data)
    doc = tree.to_json()
    text = tree.render_text()
    if args.discharge:
        rep = report(tree, discharge(tree, args.skip or ()))
        doc["report"] = rep
        text += "\n" + render_report(rep)
    validate(doc, "plan-tree")
    return doc, text


def _hunt_value(v: dict, p: int, index: int):
    from ..evaluator import derivative_stream, eval_hecke_mahler, eval_series
    from ..fixtures.registry import source
    from ..hecke.quadratic import QuadraticIrrational

    if "mid" in v:
        mid = Fraction(v["mid"])
        rad = Fraction(v["rad"])
        return v.get("label", f"x{index + 1}"), Ball._make(mid, rad, p)
    at = _rat(v["at"])
    if "hecke" in v:
        w = QuadraticIrrational.from_json(v["hecke"]["omega"])
        return v.get("label", f"f[{w}]({v['at']})"), eval_hecke_mahler(w, at, p)
    s = source(v["fixture"]).stream()
    for _ in range(v.get("derivative", 0)):
        s = derivative_stream(s)
    return v.get("label", f"f_{v['fixture']}({v['at']})"), eval_series(s, at, p)


def cmd_hunt(args) -> tuple[dict, str]:
    from ..relations import DEFAULT_DEGREE, DEFAULT_HEIGHT, HuntRequest, hunt

    data = read_document(args.request)
    validate(data, "hunt-request")
    d = int(data.get("D", DEFAULT_DEGREE))
    h = int(data.get("H", DEFAULT_HEIGHT))
    p = int(data.get("p", 400))
    named = []
    for i, v in enumerate(data["values"]):
        try:
            named.append(_hunt_value(v, p, i))
        except SchemaError as exc:
            raise SchemaError(str(exc).split(": ", 1)[-1], f"/values/{i}{exc.path if exc.path != '/' else ''}") from exc
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DomainError):
                raise DomainError(f"/values/{i}: {exc}") from exc
            raise SchemaError(str(exc), f"/values/{i}") from exc
    req = HuntRequest(tuple(v for _, v in named), d, h, p, tuple(n for n, _ in named))
    res = hunt(req)
    doc = res.to_json()
    validate(doc, "hunt-result")
    if doc["verdict"] == "Found":
        text = f"Found {doc['polynomial']}  (x_i = {', '.join(req.labels)})"
    else:
        text = f"NoneUpTo D={d} H={h} p={req.precision()}"
    return doc, text


def cmd_verify_gauge(args) -> tuple[dict, str]:
    from ..fixtures.registry import source
    from ..systems.gauge import GaugeCertificate, reverify
    from ..systems.system import MahlerSystem

    data = read_document(args.certificate)
    validate(data, "gauge-certificate")
    sysdoc = data["system"]
    s = source(sysdoc).system() if isinstance(sysdoc, str) else MahlerSystem.from_json(sysdoc)
    res = reverify(s, data["certificate"])
    if isinstance(res, GaugeCertificate):
        doc = {"verdict": "Verified", "order": res.order, "ram": res.ram,
               "det_exponent": None if res.det_exponent is None else list(res.det_exponent)}
        if res.det_coefficient is not None:
            doc["det_coefficient"] = repr(res.det_coefficient)
        text = f"Verified to order {res.order}/{res.ram}" + (f", det coefficient {doc['det_coefficient']}" if "det_coefficient" in doc else "")
    else:
        doc = {"verdict": "Mismatch", "where": res.where, "detail": res.to_json()}
        text = f"Mismatch at {res.where}: {res.to_json()}"
    validate(doc, "gauge-result")
    return doc, text


def cmd_hm_decide(args) -> tuple[dict, str]:
    from ..hecke.decide import HeckeItem, hm_family_decision
    from ..hecke.quadratic import QuadraticIrrational

    data = read_document(args.items)
    validate(data, "hm-items")
    items = []
    for i, it in enumerate(data["items"]):
        try:
            items.append(HeckeItem(QuadraticIrrational.from_json(it["omega"]), _rat(it["alpha"]), it.get("label", "")))
        except DomainError as exc:
            raise SchemaError(str(exc), f"/items/{i}") from exc
    doc = hm_family_decision(items).to_json()
    validate(doc, "hm-decision")
    text = doc["verdict"] + (f" by the {doc['theorem']}" if doc.get("theorem") else "") + (f"; {doc['note']}" if doc.get("note") else "")
    if "witness" in doc:
        text += f"; witness {doc['witness']}"
    return doc, text


def cmd_fixtures(args) -> tuple[dict, str]:
    from ..fixtures.registry import fixture_names, load

    rows = []
    for n in fixture_names():
        fx = load(n)
        rows.append({"name": n, "kind": fx.kind, "provenance": fx.provenance})
    return {"fixtures": rows}, "\n".join(f"{r['name']:<24} {r['kind']:<13} {r['provenance']}" for r in rows)


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mahlerkit", description="Certified computations with Mahler functions.")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="certified value of a fixture series at a rational point")
    e.add_argument("source", help="fixture name or fixture JSON file")
    e.add_argument("--at", help="rational point a or a/b")
    e.add_argument("--prec", type=int, default=128, help="bits; the ball radius is at most 2^-prec")
    e.add_argument("--derivative", type=int, default=0)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("cobham", help="Mahler system of a morphic word")
    c.add_argument("morphism")
    c.add_argument("--verify-order", type=int, default=30)
    c.set_defaults(func=cmd_cobham)

    m = sub.add_parser("matrix", help="transformation matrices")
    msub = m.add_subparsers(dest="matrix_command", required=True)
    mc = msub.add_parser("classify", help="class M membership")
    mc.add_argument("matrix")
    mc.set_defaults(func=cmd_classify)

    i = sub.add_parser("indep", help="multiplicative independence")
    isub = i.add_subparsers(dest="indep_command", required=True)
    ip = isub.add_parser("points")
    ip.add_argument("points", nargs="+")
    ip.set_defaults(func=cmd_indep)

    p = sub.add_parser("plan", help="matryoshka decomposition of an independence question")
    p.add_argument("request")
    p.add_argument("--discharge", action="store_true", help="evaluate leaves and run relation hunts")
    p.add_argument("--skip", action="append", help="leaf point to skip when discharging ('*' for all)")
    p.set_defaults(func=cmd_plan)

    h = sub.add_parser("hunt", help="bounded polynomial relation search")
    h.add_argument("request")
    h.set_defaults(func=cmd_hunt)

    g = sub.add_parser("verify-gauge", help="re-verify a gauge certificate")
    g.add_argument("certificate")
    g.set_defaults(func=cmd_verify_gauge)

    hm = sub.add_parser("hm", help="Hecke-Mahler values")
    hmsub = hm.add_subparsers(dest="hm_command", required=True)
    hd = hmsub.add_parser("decide")
    hd.add_argument("items")
    hd.set_defaults(func=cmd_hm_decide)

    f = sub.add_parser("fixtures", help="list bundled fixtures")
    f.set_defaults(func=cmd_fixtures)
    return ap


def emit(doc: dict, text: str, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write(text.rstrip("\n") + "\n")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_DOMAIN if exc.code else EXIT_OK
    try:
        doc, text = args.func(args)
    except PrecisionError as exc:
        return _fail(exc, EXIT_PRECISION, args.format, stderr)
    except SchemaError as exc:
        return _fail(exc, EXIT_DOMAIN, args.format, stderr, exc.path)
    except (DomainError, MahlerError) as exc:
        return _fail(exc, EXIT_DOMAIN, args.format, stderr)
    emit(doc, text, args.format, stdout)
    failed = doc.get("verdict") == "Mismatch" or doc.get("check", {}).get("verdict") == "Mismatch"
    return EXIT_FAILED if failed else EXIT_OK


def _fail(exc: Exception, code: int, fmt: str, stderr, path: str | None = None) -> int:
    doc = {"error": str(exc), "exit_code": code}
    if path is not None:
        doc["path"] = path
    emit(doc, f"error: {exc}", fmt, stderr)
    return code


def main() -> None:
    sys.exit(run())
