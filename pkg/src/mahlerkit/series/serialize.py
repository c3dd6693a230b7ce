"""JSON codecs for series and number fields."""

from __future__ import annotations

from typing import Mapping

from ..errors import SchemaError
from .numberfield import QQ, NumberField


def field_from_json(data) -> NumberField:
    if data is None:
        return QQ
    if not isinstance(data, list):
        raise SchemaError("field must be a list of minimal-polynomial coefficients", "/field")
    return NumberField(data)


def series_from_json(data: Mapping, field: NumberField | None = None):
    from .puiseux import PuiseuxSeries

    if not isinstance(data, Mapping):
        raise SchemaError("series must be an object")
    for key in ("vars", "terms"):
        if key not in data:
            raise SchemaError(f"missing key {key!r}", f"/{key}")
    if field is None:
        field = field_from_json(data.get("field"))
    terms = []
    for k, item in enumerate(data["terms"]):
        if not isinstance(item, list) or len(item) != 2:
            raise SchemaError("term must be [exponents, coefficient]", f"/terms/{k}")
        exps, coeff = item
        if not isinstance(coeff, list):
            coeff = [coeff]
        terms.append((tuple(exps), field(coeff)))
    return PuiseuxSeries(
        int(data["vars"]), terms, ram=int(data.get("ram", 1)), order=data.get("order"), field=field
    )
