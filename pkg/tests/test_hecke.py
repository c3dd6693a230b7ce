from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.errors import DomainError
from mahlerkit.evaluator import eval_hecke_mahler
from mahlerkit.hecke import (
    Dependent,
    HeckeItem,
    Independent,
    QuadraticIrrational,
    Unknown,
    cf_expansion,
    convergents,
    equiv_pm_mod_z,
    from_cf,
    hm_family_decision,
    hm_pair_decision,
    pair_relation,
    same_field,
)

import oracles

SQRT2 = QuadraticIrrational.sqrt(2)

squarefree = st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13])
surds = st.builds(
    QuadraticIrrational.make,
    st.integers(-6, 6),
    st.integers(-4, 4).filter(bool),
    st.integers(1, 5),
    squarefree,
)
points = st.builds(Fraction, st.integers(-9, 9).filter(bool), st.integers(10, 20))


def test_canonical_form():
    w = QuadraticIrrational.make(2, 2, 4, 8)  # (2 + 2 sqrt 8) / 4 = (1 + 2 sqrt 2) / 2
    assert (w.a, w.b, w.c, w.d) == (1, 2, 2, 2)
    with pytest.raises(DomainError):
        QuadraticIrrational.make(1, 1, 1, 9)
    assert str(SQRT2) == "sqrt(2)"


@settings(max_examples=200, deadline=None)
@given(surds, st.integers(-50, 50))
def test_floor_mul_matches_decimal(w, n):
    assert w.floor_mul(n) == oracles.floor_times_sqrt(n, w.a, w.b, w.c, w.d)


@settings(max_examples=100, deadline=None)
@given(surds)
def test_cf_roundtrip_and_convergents(w):
    w = w - w.floor() + 1 if not w.is_positive() else w
    pre, per = cf_expansion(w)
    assert from_cf(pre, per) == w
    digits = pre + per * 6
    for c in convergents(digits)[:12]:
        err = w - c
        bound = Fraction(1, c.denominator**2)
        assert err < bound and -err < bound


def test_golden_ratio_expansion():
    phi = QuadraticIrrational.make(1, 1, 2, 5)
    assert cf_expansion(phi) == ([], [1])
    assert cf_expansion(SQRT2) == ([1], [2])


@settings(max_examples=100, deadline=None)
@given(surds, surds, points, points)
def test_pair_decision_is_symmetric(w1, w2, a1, a2):
    d12 = hm_pair_decision(w1, a1, w2, a2)
    d21 = hm_pair_decision(w2, a2, w1, a1)
    assert type(d12) is type(d21)
    assert isinstance(d12, Dependent) == (a1 == a2 and equiv_pm_mod_z(w1, w2))


@settings(max_examples=40, deadline=None)
@given(surds, st.sampled_from([1, -1]), st.integers(-3, 3), points)
def test_pair_relation_holds_numerically(w, s, k, a):
    w2 = w * s + k
    u, v, c = pair_relation(w, w2, a)
    p = 200
    combo = eval_hecke_mahler(w, a, p).value * u + eval_hecke_mahler(w2, a, p).value * v + c
    assert combo.contains_zero()


def test_pair_relation_none_across_fields():
    assert pair_relation(SQRT2, QuadraticIrrational.sqrt(3), Fraction(1, 2)) is None
    assert not same_field(SQRT2, QuadraticIrrational.sqrt(3))


def _items(*specs):
    return [HeckeItem(w, Fraction(a)) for w, a in specs]


def test_family_decisions():
    half, third = Fraction(1, 2), Fraction(1, 3)
    split = hm_family_decision(_items((SQRT2, half), (SQRT2, -half), (SQRT2 * 2, Fraction(1, 4))))
    assert isinstance(split, Dependent) and split.coefficients == (1, 1, -2, 0)

    shifted = hm_family_decision(_items((SQRT2, half), (SQRT2 + 3, half)))
    assert isinstance(shifted, Dependent)

    assert isinstance(hm_family_decision(_items((SQRT2, half))), Independent)
    pair = hm_family_decision(_items((SQRT2, half), (1 + SQRT2 * 2, third)))
    assert isinstance(pair, Independent) and pair.theorem.startswith("two-value criterion")

    fields = hm_family_decision(_items((SQRT2, half), (SQRT2, third), (QuadraticIrrational.sqrt(3), Fraction(1, 4))))
    assert isinstance(fields, Independent) and fields.theorem.startswith("distinct-fields")

    single = hm_family_decision(_items((SQRT2, half), (SQRT2 * 3, half), (SQRT2 * 5, half)))
    assert isinstance(single, Independent) and single.theorem.startswith("single-point")

    unknown = hm_family_decision(_items((SQRT2, half), (1 + SQRT2 * 2, third), (SQRT2, Fraction(1, 5))))
    assert isinstance(unknown, Unknown) and "linear" in unknown.note


def test_split_relation_is_numerically_true():
    p = 700
    v = [eval_hecke_mahler(SQRT2, Fraction(1, 2), p).value,
         eval_hecke_mahler(SQRT2, Fraction(-1, 2), p).value,
         eval_hecke_mahler(SQRT2 * 2, Fraction(1, 4), p).value]
    diff = v[0] + v[1] - v[2] * 2
    assert diff.mag() < Fraction(1, 2**600)


def test_item_domain():
    with pytest.raises(DomainError):
        HeckeItem(SQRT2, Fraction(1))
    with pytest.raises(DomainError):
        HeckeItem(SQRT2, Fraction(0))


def test_decisions_serialize():
    d = hm_family_decision(_items((SQRT2, Fraction(1, 2)), (SQRT2, Fraction(-1, 2)), (SQRT2 * 2, Fraction(1, 4))))
    out = d.to_json()
    assert out["verdict"] == "Dependent" and out["witness"]["coefficients"] == [1, 1, -2, 0]
