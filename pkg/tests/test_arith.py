from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.arith import (
    Ball,
    DependentWitness,
    Independent,
    IntMatrix,
    factor_rational,
    find_integer_relation,
    format_rational,
    left_kernel,
    lll_reduce,
    lvdp_decompose,
    mult_indep,
    parse_rational,
    smith_normal_form,
)
from mahlerkit.arith.intmatrix import rational_solve
from mahlerkit.arith.lattice import is_lll_reduced
from mahlerkit.errors import DomainError, PrecisionError

import oracles

# built from integers: st.fractions with a denominator cap is slow at 10^4 cases
fractions = st.builds(Fraction, st.integers(-10**9, 10**9), st.integers(1, 10**6))
precs = st.integers(min_value=8, max_value=200)


def balls():
    return st.builds(
        lambda m, r, p: Ball._make(m, abs(r), p),
        fractions,
        st.builds(Fraction, st.integers(0, 10**4), st.integers(1, 10**4)).map(lambda r: min(r, 1)),
        precs,
    )


def _member(b: Ball, t: Fraction) -> Fraction:
    """A point of ``b`` picked by ``t`` in [0, 1]."""
    return b.lower + 2 * b.rad * t


unit = st.builds(lambda k: Fraction(k, 96), st.integers(0, 96))


# -- parsing -------------------------------------------------------------------

@pytest.mark.parametrize("text,value", [("1/2", Fraction(1, 2)), ("-3/9", Fraction(-1, 3)), ("7", Fraction(7))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/ 2", "1/0", "x", "", "1.5", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(DomainError):
        parse_rational(bad)


@given(fractions)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_factor_rational():
    assert factor_rational(Fraction(12, 35)) == {2: 2, 3: 1, 5: -1, 7: -1}


# -- balls ---------------------------------------------------------------------
# The containment property is the contract every certified value rests on:
# for x in X and y in Y, x op y lies in X op Y.

@settings(max_examples=10_000, deadline=None)
@given(balls(), balls(), unit, unit, st.sampled_from(["+", "-", "*", "/"]))
def test_ball_containment(x, y, s, t, op):
    a, b = _member(x, s), _member(y, t)
    if op == "+":
        assert (x + y).contains(a + b)
    elif op == "-":
        assert (x - y).contains(a - b)
    elif op == "*":
        assert (x * y).contains(a * b)
    else:
        if y.contains_zero():
            with pytest.raises(DomainError):
                x / y
        else:
            assert (x / y).contains(a / b)


@settings(max_examples=500, deadline=None)
@given(balls(), unit, st.integers(min_value=0, max_value=6))
def test_ball_pow_containment(x, s, n):
    assert (x**n).contains(_member(x, s) ** n)


@given(fractions, precs)
def test_exact_ball_contains_value(x, p):
    b = Ball.exact(x, p)
    assert b.contains(x)
    assert b.rad <= abs(x) * Fraction(1, 2 ** (p - 1)) + Fraction(1, 2**p) or b.rad == 0


def test_ball_helpers():
    b = Ball.from_interval(1, 3)
    assert b.mid == 2 and b.rad == 1
    assert b.mag() == 3 and b.mig() == 1
    assert not b.contains_zero()
    assert b.overlaps(Ball.exact(3))
    with pytest.raises(DomainError):
        Ball(Fraction(0), Fraction(-1))


# -- Smith normal form and kernels ---------------------------------------------

int_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=300, deadline=None)
@given(int_matrices)
def test_snf_invariants(rows):
    a = IntMatrix(rows)
    u, d, v = smith_normal_form(a)
    assert (u @ a @ v).tolist() == d.tolist()
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    m, n = d.shape
    diag = [d[i, i] for i in range(min(m, n))]
    assert all(x >= 0 for x in diag)
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i, j] == 0
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)


@settings(max_examples=200, deadline=None)
@given(int_matrices)
def test_left_kernel(rows):
    a = IntMatrix(rows)
    ker = left_kernel(a)
    for k in ker:
        assert any(k)
        assert all(sum(k[i] * rows[i][j] for i in range(len(rows))) == 0 for j in range(len(rows[0])))


# -- LLL -----------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_lll_invariants(rows):
    a = IntMatrix(rows)
    if a.det() == 0:
        return
    r = lll_reduce(rows)
    assert is_lll_reduced(r)
    # same lattice: equal covolume and every new row an integer combination of the old
    assert abs(r.det()) == abs(a.det())
    for row in r.tolist():
        sol = rational_solve(rows, row)
        assert sol is not None and all(x.denominator == 1 for x in sol)


def test_integer_relation_found_and_null():
    third = Ball.exact(Fraction(1, 3), 200)
    cert = find_integer_relation([third, Ball.exact(Fraction(2, 3), 200), Ball.exact(1, 200)], 10, 200)
    assert cert.found and cert.coefficients in {(1, 1, -1), (-1, -1, 1)}
    with pytest.raises(PrecisionError):
        find_integer_relation([third, Ball.exact(1, 200)], 10**30, 60)


# -- multiplicative independence -----------------------------------------------

def test_mult_indep_examples():
    assert mult_indep([Fraction(1, 2), Fraction(1, 3)]) == Independent()
    w = mult_indep([Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
    assert isinstance(w, DependentWitness) and tuple(w.exponents) == (1, 1, -1)
    # -1/2 squared is 1/4: the witness must respect signs
    w = mult_indep([Fraction(-1, 2), Fraction(1, 4)])
    assert isinstance(w, DependentWitness)
    prod = Fraction(-1, 2) ** w.exponents[0] * Fraction(1, 4) ** w.exponents[1]
    assert prod == 1


small_rationals = st.builds(
    lambda s, n, d: s * Fraction(n, d),
    st.sampled_from([1, -1]),
    st.sampled_from([1, 2, 3, 4, 6, 8, 9, 12]),
    st.sampled_from([1, 2, 3, 5, 10]),
).filter(lambda q: abs(q) != 1)


@settings(max_examples=100, deadline=None)
@given(st.lists(small_rationals, min_size=1, max_size=3))
def test_mult_indep_matches_bruteforce(vals):
    # the search is bounded, so it can only refute an Independent verdict
    res = mult_indep(vals)
    if oracles.mult_dependent_bruteforce(vals, 5):
        assert isinstance(res, DependentWitness)
    if isinstance(res, DependentWitness):
        prod = Fraction(1)
        for v, e in zip(vals, res.exponents):
            prod *= Fraction(v) ** e
        assert prod == 1


@settings(max_examples=200, deadline=None)
@given(st.lists(small_rationals, min_size=1, max_size=4))
def test_lvdp_reconstructs(vals):
    dec = lvdp_decompose(vals)
    assert dec.reconstruct() == [Fraction(v) for v in vals]
    assert isinstance(mult_indep(list(dec.base)), Independent) or not dec.base
    assert all(b > 0 for b in dec.base)


def test_lvdp_example():
    dec = lvdp_decompose([Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
    assert dec.reconstruct() == [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]
    assert len(dec.base) == 2
