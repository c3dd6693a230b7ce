"""Constructions behind the bundled fixtures (systems, gauges, Hecke items)."""

from __future__ import annotations

from ..arith.intmatrix import IntMatrix
from ..series.mahler import solve_mahler_fixed_point, verify_identity
from ..series.numberfield import QQ_J
from ..series.puiseux import PuiseuxSeries
from ..series.ratfunc import RationalFunction, RationalFunctionMatrix
from ..systems.gauge import GaugeCertificate, verify_gauge
from ..systems.scalar import ScalarMahlerEq, companion_system, poly
from ..systems.system import MahlerSystem
from ..words.cobham import cobham_construct
from ..words.morphism import fibonacci_morphism, tribonacci_morphism

_Z = PuiseuxSeries.variable(1, 0)


def thue_morse_equation() -> ScalarMahlerEq:
    """``f(z) = (1 - z) f(z^2) + z / (1 - z^2)`` with ``f(0) = 0``."""
    return ScalarMahlerEq(2, (poly([1]), poly([-1, 1])), RationalFunction(_Z, 1 - _Z**2), "tm")


def paperfolding_equation() -> ScalarMahlerEq:
    """``f(z) = f(z^2) + z / (1 - z^4)``."""
    return ScalarMahlerEq(2, (poly([1]), poly([-1])), RationalFunction(_Z, 1 - _Z**4), "pf")


def baum_sweet_equation() -> ScalarMahlerEq:
    """``f(z) = z f(z^2) + f(z^4)``."""
    return ScalarMahlerEq(2, (poly([1]), poly([0, -1]), poly([-1])), None, "bs")


def powers_of_two_equation() -> ScalarMahlerEq:
    """``f(z) = f(z^2) + z`` for ``sum z^(2^n)``."""
    return ScalarMahlerEq(2, (poly([1]), poly([-1])), RationalFunction(_Z), "p2")


def baum_sweet_system() -> MahlerSystem:
    """``(f(z), f(z^2)) = [[z, 1], [1, 0]] (f(z^2), f(z^4))``."""
    return companion_system(baum_sweet_equation())


def powers_of_two_bivariate() -> MahlerSystem:
    """``F(z1, z2) = f(z1) + f(z2)``-type system with ``T = 2 I``: one block per variable.

    Used for the point ``(1/2, 1/3)``: the coordinates of ``(F, 1)`` satisfy
    ``F(z) = F(Tz) + z1 + z2``.
    """
    z1 = PuiseuxSeries.variable(2, 0)
    z2 = PuiseuxSeries.variable(2, 1)
    a = RationalFunctionMatrix(
        [[RationalFunction.constant(2, 1), RationalFunction(z1 + z2)],
         [RationalFunction.zero(2), RationalFunction.constant(2, 1)]], 2)
    return MahlerSystem(IntMatrix([[2, 0], [0, 2]]), a, True, "p2-bivariate")


# -- Fibonacci gauge -----------------------------------------------------------

def fibonacci_gauge(order: int = 20) -> GaugeCertificate:
    c = cobham_construct(fibonacci_morphism())
    f = c.components(order + 4)
    mono = PuiseuxSeries.monomial
    phi = [
        [f[0], mono([-1, -1]) - mono([-1, 0])],
        [f[1], mono([0, -1]) - mono([-1, -1])],
    ]
    cert = verify_gauge(c.system, phi, [[1, 0], [0, -1]], order, (-1, -1))
    assert isinstance(cert, GaugeCertificate), cert
    return cert


# -- Tribonacci gauge ----------------------------------------------------------
# exponents below are numerators over the ramification 2

TRIBONACCI_T = IntMatrix([[1, 1, 0], [1, 0, 1], [1, 0, 0]])


def _j():
    j = QQ_J.gen()
    return j, j.conj()


def _tr(terms) -> PuiseuxSeries:
    return PuiseuxSeries(3, terms, ram=2, field=QQ_J)


def tribonacci_h_equation():
    """Coefficients ``c_1, c_2, c_3`` and forcing term of the ``h`` equation."""
    j, jb = _j()
    coeffs = [_tr({(0, 0, 0): jb}), _tr({(2, 2, 0): j}), _tr({(6, 4, 2): 1})]
    forcing = _tr({(1, 1, 1): -1, (3, 3, 1): jb, (5, 3, 1): j, (11, 7, 3): 1})
    return coeffs, forcing


def tribonacci_l() -> PuiseuxSeries:
    j, jb = _j()
    return _tr({(-1, -1, -1): 1, (-1, -1, 1): j, (-1, 1, -1): jb, (1, 1, -1): 1})


def _mahler_apply(coeffs, t, f):
    out = None
    tk = IntMatrix.identity(3)
    for c in coeffs:
        tk = tk @ t
        term = c * f.substitute_monomial(tk)
        out = term if out is None else out + term
    return out


def tribonacci_l_check():
    """``l`` satisfies its inhomogeneous equation exactly."""
    coeffs, forcing = tribonacci_h_equation()
    l = tribonacci_l()
    lhs = _mahler_apply(coeffs, TRIBONACCI_T, l)
    rhs = l + forcing
    # both sides are exact Laurent polynomials; compare far beyond their degree
    return verify_identity(lhs, rhs, 64)


def tribonacci_g(order: int = 12) -> PuiseuxSeries:
    coeffs, forcing = tribonacci_h_equation()
    h = solve_mahler_fixed_point(coeffs, TRIBONACCI_T, forcing, order)
    return tribonacci_l() + h


def tribonacci_phi(order: int = 12):
    j, jb = _j()
    g = tribonacci_g(order)
    gb = g.conj()
    t1 = TRIBONACCI_T
    t2 = t1 @ t1
    c = cobham_construct(tribonacci_morphism())
    f = [x.with_field(QQ_J).with_ram(2) for x in c.components(order // 2 + 2)]
    z0 = _tr({(2, 0, 0): 1})
    z0sq_z1 = _tr({(4, 2, 0): 1})
    phi = [
        [f[0], g, gb],
        [f[1], (z0 * g.substitute_monomial(t1)).scale(jb), (z0 * gb.substitute_monomial(t1)).scale(j)],
        [f[2], (z0sq_z1 * g.substitute_monomial(t2)).scale(j), (z0sq_z1 * gb.substitute_monomial(t2)).scale(jb)],
    ]
    b = [[QQ_J.one(), QQ_J.zero(), QQ_J.zero()],
         [QQ_J.zero(), j, QQ_J.zero()],
         [QQ_J.zero(), QQ_J.zero(), jb]]
    return c.system, phi, b


def tribonacci_gauge(order: int = 12) -> GaugeCertificate:
    system, phi, b = tribonacci_phi(order)
    cert = verify_gauge(system, phi, b, order, (-2, -2, -2))
    assert isinstance(cert, GaugeCertificate), cert
    return cert
