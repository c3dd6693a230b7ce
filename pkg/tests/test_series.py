from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.arith import IntMatrix
from mahlerkit.errors import DomainError, PrecisionError
from mahlerkit.series import (
    QQ,
    QQ_J,
    Mismatch,
    Ok,
    PuiseuxSeries,
    RationalFunction,
    solve_mahler_fixed_point,
    verify_identity,
)

import oracles

NV = 2
exps = st.tuples(*[st.integers(0, 5)] * NV)
polys = st.dictionaries(exps, st.integers(-5, 5).filter(bool), max_size=6)
tmats = st.lists(st.lists(st.integers(0, 3), min_size=NV, max_size=NV), min_size=NV, max_size=NV)


def ps(d: dict, order=None) -> PuiseuxSeries:
    return PuiseuxSeries(NV, d, order=order)


def as_dict(p: PuiseuxSeries) -> dict:
    return {e: c.to_rational() for e, c in p.terms.items()}


# -- arithmetic against the naive oracle ----------------------------------------

@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_mul_matches_oracle(a, b):
    assert as_dict(ps(a) * ps(b)) == oracles.poly_mul(a, b)


@settings(max_examples=200, deadline=None)
@given(polys, polys, st.integers(0, 8))
def test_truncated_mul(a, b, order):
    # valuations buy precision: (z + O(z^2))^2 is known to order 2
    p = ps(a, order) * ps(b, order)
    assert p.order is None or p.order >= order
    ta = {e: c for e, c in a.items() if sum(e) <= order}
    tb = {e: c for e, c in b.items() if sum(e) <= order}
    assert as_dict(p) == oracles.poly_mul(ta, tb, p.order)


@settings(max_examples=200, deadline=None)
@given(polys, tmats)
def test_substitution_matches_oracle(a, t):
    assert as_dict(ps(a).substitute_monomial(IntMatrix(t))) == oracles.substitute(a, t)


# -- substitution laws ----------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(polys, polys, tmats)
def test_substitution_is_ring_homomorphism(a, b, t):
    t = IntMatrix(t)
    f, g = ps(a), ps(b)
    assert (f * g).substitute_monomial(t) == f.substitute_monomial(t) * g.substitute_monomial(t)
    assert (f + g).substitute_monomial(t) == f.substitute_monomial(t) + g.substitute_monomial(t)


@settings(max_examples=200, deadline=None)
@given(polys, tmats, tmats)
def test_substitution_composition(a, t1, t2):
    # f(T1 (T2 z)) is f evaluated at the monomial map of T1 T2
    t1, t2 = IntMatrix(t1), IntMatrix(t2)
    f = ps(a)
    assert f.substitute_monomial(t1).substitute_monomial(t2) == f.substitute_monomial(t1 @ t2)
    assert f.substitute_monomial(IntMatrix.identity(NV)) == f


def test_substitution_rejects_negative_matrix():
    with pytest.raises(DomainError):
        ps({(1, 0): 1}).substitute_monomial(IntMatrix([[1, -1], [0, 1]]))


# -- inverse, derivative --------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(polys, st.integers(1, 5).filter(bool), st.integers(1, 10))
def test_inverse(a, c0, order):
    a = dict(a)
    a[(0, 0)] = c0
    f = ps(a)
    one = (f * f.inverse(order)).truncate(order)
    assert one.same_terms(PuiseuxSeries.constant(NV, 1))


def test_inverse_needs_unit():
    with pytest.raises(DomainError):
        PuiseuxSeries.variable(1, 0).inverse(5)


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_product_rule(a, b):
    f, g = ps(a), ps(b)
    assert (f * g).derivative(0) == f.derivative(0) * g + f * g.derivative(0)


def test_coefficient_beyond_order():
    f = PuiseuxSeries.univariate([1, 2, 3], order=2)
    assert f.coefficient((2,)) == QQ(3)
    with pytest.raises(PrecisionError):
        f.coefficient((3,))


def test_ramified_exponents_align():
    half = PuiseuxSeries(1, {(1,): 1}, ram=2)  # z^(1/2)
    assert (half * half).same_terms(PuiseuxSeries.variable(1, 0))


@settings(max_examples=100, deadline=None)
@given(polys)
def test_json_roundtrip(a):
    f = ps(a, order=7)
    assert PuiseuxSeries.from_json(f.to_json()) == f


def test_diagonal_and_evaluate():
    f = ps({(1, 0): 2, (0, 2): -1})
    assert f.specialize_diagonal().same_terms(PuiseuxSeries.univariate([0, 2, -1]))
    assert f.evaluate([Fraction(1, 2), Fraction(1, 3)]) == QQ(Fraction(1) - Fraction(1, 9))


# -- number fields --------------------------------------------------------------

def test_eisenstein_field():
    j = QQ_J.gen()
    assert (j * j + j + 1).is_zero()
    assert j.conj() == j * j
    assert (j * j.inverse()) == QQ_J.one()
    assert (1 + 2 * j).conj() == 1 + 2 * j * j


# -- rational functions ---------------------------------------------------------

def test_ratfunc_reduces():
    z = PuiseuxSeries.variable(1, 0)
    r = RationalFunction(z * z - 1, z - 1)
    assert r == RationalFunction(z + 1)
    assert r.is_polynomial()


def test_ratfunc_series_and_value():
    z = PuiseuxSeries.variable(1, 0)
    r = RationalFunction(PuiseuxSeries.constant(1, 1), 1 - z)
    s = r.to_series(20)
    assert all(s.coefficient((n,)) == QQ(1) for n in range(21))
    assert r.evaluate([Fraction(1, 3)]) == QQ(Fraction(3, 2))
    with pytest.raises(DomainError):
        r.evaluate([Fraction(1)])


# -- identities and the fixed-point solver --------------------------------------

def test_verify_identity_reports_first_mismatch():
    a = PuiseuxSeries.univariate([1, 2, 3])
    b = PuiseuxSeries.univariate([1, 2, 4])
    assert isinstance(verify_identity(a, a, 10), Ok)
    res = verify_identity(a, b, 10)
    assert isinstance(res, Mismatch) and res.exponent == (2,)
    assert isinstance(verify_identity(a, b, 1), Ok)


def test_fixed_point_thue_morse():
    # f(z) = (1 - z) f(z^2) + z / (1 - z^2)
    order = 300
    z = PuiseuxSeries.variable(1, 0)
    forcing = (z * (1 - z * z).inverse(order)).truncate(order)
    h = solve_mahler_fixed_point([1 - z], IntMatrix([[2]]), forcing, order)
    assert [h.coefficient((n,)).to_rational() for n in range(order + 1)] == [oracles.thue_morse(n) for n in range(order + 1)]
