from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mahlerkit.arith import Ball, IntMatrix
from mahlerkit.errors import DomainError
from mahlerkit.evaluator import (
    closed_form_stream,
    cobham_residual,
    derivative_stream,
    dfao_stream,
    eval_cobham,
    eval_hecke_mahler,
    eval_series,
    hecke_mahler_stream,
    morphic_stream,
    system_residual,
    tail_bound,
)
from mahlerkit.fixtures.builders import thue_morse_equation
from mahlerkit.fixtures.registry import source
from mahlerkit.hecke import QuadraticIrrational
from mahlerkit.series import PuiseuxSeries, solve_mahler_fixed_point
from mahlerkit.systems import companion_system
from mahlerkit.words import cobham_construct, fibonacci_morphism, thue_morse_dfao, thue_morse_morphism

import oracles

TM_HALF = "0.824908067280215195566722736516910566178"
# f_sqrt2(1/2) = sum floor(n sqrt 2) 2^-n, pinned to 100 digits
F_SQRT2_HALF = (
    "2.3225885225880677301214406827879840801195025080043292566571806239440521756096953920623557500723917722"
)
SQRT2 = QuadraticIrrational.sqrt(2)


def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _mp(b: Ball):
    return _mpq(b.mid)


# -- streams --------------------------------------------------------------------

def test_thue_morse_streams_agree():
    """DFAO, morphism and the Mahler fixed point give the same 4096 coefficients."""
    n = 4096
    via_dfao = dfao_stream(thue_morse_dfao()).terms(n)
    via_morphism = morphic_stream(thue_morse_morphism()).terms(n)
    z = PuiseuxSeries.variable(1, 0)
    order = n - 1
    forcing = PuiseuxSeries(1, {(k,): 1 for k in range(1, order + 1, 2)}, order=order)  # z / (1 - z^2)
    h = solve_mahler_fixed_point([1 - z], IntMatrix([[2]]), forcing, order)
    via_equation = [h.coefficient((k,)).to_rational() for k in range(n)]
    assert via_dfao == via_morphism == via_equation
    assert via_dfao[:64] == [oracles.thue_morse(k) for k in range(64)]


def test_hecke_stream_matches_decimal_floor():
    w = QuadraticIrrational.make(1, 2, 3, 5)  # (1 + 2 sqrt 5) / 3
    terms = hecke_mahler_stream(w).terms(500)
    assert terms == [oracles.floor_times_sqrt(n, 1, 2, 3, 5) for n in range(500)]
    neg = hecke_mahler_stream(-SQRT2).terms(200)
    assert neg == [oracles.floor_times_sqrt(n, 0, -1, 1, 2) for n in range(200)]


def test_growth_model_is_enforced():
    with pytest.raises(DomainError):
        closed_form_stream(lambda n: n * n, 1, 1)
    s = closed_form_stream(lambda n: n, 1, 1)
    d = derivative_stream(s)
    assert d.terms(5) == [1, 4, 9, 16, 25]
    assert d.C == 2 and d.d == 2


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 3), st.integers(1, 9), st.integers(2, 9), st.integers(0, 60))
def test_tail_bound_is_an_upper_bound(d, c, inv_x, n):
    x = Fraction(1, inv_x)
    partial = sum(c * (k + 1) ** d * x**k for k in range(n + 1, n + 400))
    assert partial <= tail_bound(Fraction(c), d, x, n)


# -- certified values -----------------------------------------------------------

def test_thue_morse_half():
    v = eval_series(source("tm").stream(), Fraction(1, 2), 160)
    assert v.value.rad < Fraction(1, 10**40)
    # the reference digits are truncated, so allow one unit in the last place
    assert abs(v.value.mid - Fraction(TM_HALF)) < Fraction(1, 10**39)
    assert v.value.mid_decimal(45).startswith(TM_HALF[:-1])


@pytest.mark.parametrize("name,oracle", [
    ("tm", oracles.thue_morse), ("pf", oracles.paperfolding), ("bs", oracles.baum_sweet), ("p2", oracles.powers_of_two),
])
@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(-1, 2), Fraction(2, 7)])
def test_values_against_mpmath(name, oracle, alpha):
    v = eval_series(source(name).stream(), alpha, 200)
    with mpmath.workdps(80):
        ref = oracles.series_value(oracle, alpha, 60)
        assert abs(_mp(v.value) - ref) <= _mpq(v.value.rad) + mpmath.mpf(10) ** -58


@pytest.mark.parametrize("p", [64, 128, 300])
def test_balls_nest_under_refinement(p):
    s = source("bs").stream()
    coarse = eval_series(s, Fraction(1, 3), p).value
    fine = eval_series(s, Fraction(1, 3), p + 64).value
    assert coarse.contains(fine)
    assert coarse.rad <= Fraction(1, 2**p)


def test_zero_and_boundary():
    s = source("bs").stream()
    v = eval_series(s, 0, 64).value
    assert v.mid == 1 and v.rad == 0
    with pytest.raises(DomainError):
        eval_series(s, 1, 64)
    with pytest.raises(DomainError):
        eval_series(s, Fraction(-3, 2), 64)


def test_derivative_value():
    s = source("tm").stream()
    d = eval_series(derivative_stream(s), Fraction(1, 3), 128).value
    with mpmath.workdps(60):
        ref = oracles.series_value(lambda n: n * oracles.thue_morse(n), Fraction(1, 3), 40) * 3
        assert abs(_mp(d) - ref) < mpmath.mpf(10) ** -35


def test_hecke_value_pinned():
    v = eval_hecke_mahler(SQRT2, Fraction(1, 2), 360).value
    assert v.mid_decimal(100) == F_SQRT2_HALF


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)])
def test_hecke_splitting_identity(alpha):
    """f_w(a) + f_w(-a) = 2 f_{2w}(a^2) because floor(2m w) collects the even terms."""
    p = 300
    lhs = eval_hecke_mahler(SQRT2, alpha, p).value + eval_hecke_mahler(SQRT2, -alpha, p).value
    rhs = eval_hecke_mahler(SQRT2 * 2, alpha * alpha, p).value * 2
    diff = lhs - rhs
    assert diff.contains_zero() and diff.rad < Fraction(1, 2 ** (p - 4))


# -- Cobham values and residuals ------------------------------------------------

def test_cobham_diagonal_matches_word_series():
    c = cobham_construct(fibonacci_morphism())
    a = Fraction(1, 5)
    vals = eval_cobham(c, [a, a], 128)
    total = vals[0].value * 0 + vals[1].value  # weights: 0 -> 0, 1 -> 1
    with mpmath.workdps(60):
        word = oracles.fibonacci_word(300)
        ref = oracles.series_value(lambda n: int(word[n]), a, 40, terms=250)
        assert abs(_mp(total) - ref) < mpmath.mpf(10) ** -35
    partition = vals[0].value + vals[1].value
    assert partition.contains(1 / (1 - a))


@pytest.mark.parametrize("name", ["tm", "pf", "bs"])
@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 10)])
def test_residuals(name, alpha):
    p = 256
    src = source(name)
    res = system_residual(src.system(), src.stream(), alpha, p)
    assert res.contains_zero()
    assert res.rad < Fraction(2**32, 2**p)


def test_residual_detects_wrong_system():
    s = companion_system(thue_morse_equation())
    res = system_residual(s, source("pf").stream(), Fraction(1, 2), 128)
    assert not res.contains_zero()


def test_cobham_residual():
    c = cobham_construct(fibonacci_morphism())
    res = cobham_residual(c, [Fraction(1, 5), Fraction(1, 5)], 200)
    assert res.contains_zero() and res.rad < Fraction(1, 2**160)
