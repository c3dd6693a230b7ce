from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.arith import Ball
from mahlerkit.arith.lattice import required_precision
from mahlerkit.errors import DomainError, PrecisionError
from mahlerkit.evaluator import eval_hecke_mahler, eval_series
from mahlerkit.fixtures.registry import source
from mahlerkit.hecke import QuadraticIrrational
from mahlerkit.relations import Found, HuntRequest, NoneUpTo, hunt, monomials, render_polynomial


@pytest.mark.parametrize("n,d", [(1, 3), (2, 3), (3, 2), (4, 1)])
def test_monomial_count_and_order(n, d):
    monos = monomials(n, d)
    assert len(monos) == comb(n + d, d)
    assert monos[0] == (0,) * n
    assert [sum(m) for m in monos] == sorted(sum(m) for m in monos)
    assert len(set(monos)) == len(monos)


def test_render_polynomial():
    monos = [(0, 0), (1, 0), (0, 1), (2, 0)]
    assert render_polynomial([0, -1, 1, 0], monos) == "-x1 + x2"
    assert render_polynomial([0, 0, 1, -1], monos) == "x2 - x1^2"


def test_hecke_triple_relation():
    p = 700
    sqrt2 = QuadraticIrrational.sqrt(2)
    vals = [eval_hecke_mahler(sqrt2, Fraction(1, 2), p), eval_hecke_mahler(sqrt2, Fraction(-1, 2), p),
            eval_hecke_mahler(sqrt2 * 2, Fraction(1, 4), p)]
    res = hunt(HuntRequest(tuple(vals), 1, 10, p))
    assert isinstance(res, Found)
    assert res.coefficients[1:] == (1, 1, -2) and res.coefficients[0] == 0
    assert res.polynomial() == "x1 + x2 - 2*x3"


@settings(max_examples=15, deadline=None)
@given(st.integers(-30, 30).filter(bool), st.integers(-30, 30), st.sampled_from([Fraction(1, 3), Fraction(1, 5), Fraction(-2, 7)]))
def test_planted_linear_relation_is_found(a, b, alpha):
    """v2 = a v1 + b for a transcendental v1 must be recovered up to sign."""
    p = 256
    v1 = eval_series(source("tm").stream(), alpha, p).value
    v2 = v1 * a + b
    res = hunt(HuntRequest((v1, v2), 1, 100, p))
    assert isinstance(res, Found)
    c = res.coefficients  # c0 + c1 x1 + c2 x2
    assert c[1] * 1 + c[2] * a == 0 and c[0] + c[2] * b == 0


def test_square_relation():
    p = 400
    v = eval_series(source("pf").stream(), Fraction(1, 3), p).value
    res = hunt(HuntRequest((v, v * v), 2, 10, p))
    assert isinstance(res, Found) and res.polynomial() == "x2 - x1^2"


def test_null_hunt_certificate():
    p = 1200
    vals = (eval_series(source("tm").stream(), Fraction(1, 2), p), eval_series(source("pf").stream(), Fraction(1, 2), p))
    res = hunt(HuntRequest(vals, 3, 10**4, p))
    assert isinstance(res, NoneUpTo)
    out = res.to_json()
    assert out["p"] == 1200 and out["certificate"]["none_up_to"]["H"] == 10**4
    # the lattice runs at the accuracy the monomial balls actually carry
    assert required_precision(20, 10**4) <= out["certificate"]["none_up_to"]["p"] <= 1200


def test_precision_floor():
    v = eval_series(source("tm").stream(), Fraction(1, 2), 128)
    w = eval_series(source("pf").stream(), Fraction(1, 2), 128)
    with pytest.raises(PrecisionError):
        hunt(HuntRequest((v, w), 3, 10**4, 128))


def test_request_validation():
    with pytest.raises(DomainError):
        HuntRequest(())
    with pytest.raises(DomainError):
        HuntRequest((Ball.exact(1),), 0)
