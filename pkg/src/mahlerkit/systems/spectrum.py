"""Spectral radius, class-M membership and multiplicative classes of radii."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import sympy
from sympy import Poly, Symbol, cyclotomic_poly, totient

from ..arith.ball import Ball
from ..arith.intmatrix import IntMatrix
from ..arith.lattice import find_integer_relation
from ..errors import DomainError, PrecisionError

X = Symbol("x")
_Y = Symbol("y")


def _frac(q) -> Fraction:
    q = sympy.Rational(q)
    return Fraction(int(q.p), int(q.q))


@dataclass(frozen=True)
class SpectrumReport:
    charpoly: tuple[int, ...]  # high to low, monic
    rho: Ball
    minpoly: tuple[int, ...]  # high to low, primitive, positive leading coefficient
    has_root_of_unity_eigenvalue: bool
    singular: bool
    root_of_unity_orders: tuple[int, ...] = ()
    interval: tuple[Fraction, Fraction] = field(default=(Fraction(0), Fraction(0)), compare=False)

    def rho_is_one(self) -> bool:
        return self.minpoly == (1, -1)

    def rho_exceeds_one(self) -> bool:
        return self.rho.mig() > 1 or (self.interval[0] > 1)

    def to_json(self) -> dict:
        return {
            "charpoly": list(self.charpoly),
            "rho": {"mid": self.rho.mid_decimal(40), "rad": self.rho.rad_decimal()},
            "minpoly": list(self.minpoly),
            "has_root_of_unity_eigenvalue": self.has_root_of_unity_eigenvalue,
            "singular": self.singular,
        }


def characteristic_polynomial(t: IntMatrix) -> Poly:
    if not t.is_square():
        raise DomainError("characteristic polynomial of a non-square matrix")
    return sympy.Matrix(t.tolist()).charpoly(X)


def cyclotomic_factors(p: Poly) -> list[int]:
    """Orders ``m`` with ``Phi_m | p``, by trial division over ``phi(m) <= deg p``."""
    n = p.degree()
    out = []
    m = 1
    # phi(m) >= sqrt(m / 2), so m <= 2 n^2 covers every phi(m) <= n
    while m <= max(2, 2 * n * n):
        if totient(m) <= n:
            _, r = p.div(Poly(cyclotomic_poly(m, X), X))
            if r.is_zero:
                out.append(m)
        m += 1
    return out


def spectral_radius(t: IntMatrix, prec: int = 256) -> SpectrumReport:
    """Perron root of a non-negative square integer matrix, isolated exactly."""
    if not t.is_square():
        raise DomainError("spectral radius of a non-square matrix")
    if not t.is_nonnegative():
        raise DomainError("spectral radius needs a non-negative matrix")
    cp = characteristic_polynomial(t)
    # Perron-Frobenius: rho is an eigenvalue, hence the largest real root
    ivs = cp.intervals()
    (lo, hi), _ = max(ivs, key=lambda iv: iv[0][1])
    lo, hi = _frac(lo), _frac(hi)
    # choose the irreducible factor owning this root
    _, factors = sympy.factor_list(cp.as_expr(), X)
    minp = None
    for f, _mult in factors:
        fp = Poly(f, X)
        if lo == hi:
            if fp.eval(sympy.Rational(lo.numerator, lo.denominator)) == 0:
                minp = fp
                break
        elif fp.count_roots(sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator)) > 0:
            minp = fp
            break
    assert minp is not None
    if minp.LC() < 0:
        minp = -minp
    eps = sympy.Rational(1, 2 ** (prec + 2))
    if lo != hi:
        s, u = minp.refine_root(sympy.Rational(lo.numerator, lo.denominator),
                                sympy.Rational(hi.numerator, hi.denominator), eps=eps)
        lo, hi = _frac(s), _frac(u)
    rho = Ball.from_interval(lo, hi, prec)
    orders = tuple(cyclotomic_factors(cp))
    return SpectrumReport(
        tuple(int(c) for c in cp.all_coeffs()),
        rho,
        tuple(int(c) for c in minp.all_coeffs()),
        bool(orders),
        t.det() == 0,
        orders,
        (lo, hi),
    )


@dataclass(frozen=True)
class InM:
    rho: SpectrumReport

    def to_json(self) -> dict:
        return {"verdict": "InM", "rho": self.rho.to_json()}


@dataclass(frozen=True)
class NotInM:
    reason: str
    detail: str = ""

    def to_json(self) -> dict:
        out = {"verdict": "NotInM", "reason": self.reason}
        if self.detail:
            out["detail"] = self.detail
        return out


def class_m_check(t: IntMatrix) -> InM | NotInM:
    """Operational class M: non-negative, nonsingular, ``rho > 1``, no root-of-unity eigenvalue."""
    if not t.is_square():
        return NotInM("not square")
    if not t.is_nonnegative():
        return NotInM("negative entry")
    rep = spectral_radius(t)
    if rep.singular:
        return NotInM("singular", "determinant 0")
    if not rep.rho_exceeds_one():
        return NotInM("ρ = 1" if rep.rho_is_one() else "ρ < 1", f"minimal polynomial of ρ: {_poly_str(rep.minpoly)}")
    if rep.has_root_of_unity_eigenvalue:
        m = rep.root_of_unity_orders[0]
        what = "eigenvalue 1" if m == 1 else "eigenvalue -1" if m == 2 else f"primitive {m}-th root of unity"
        return NotInM("root-of-unity eigenvalue", what)
    return InM(rep)


def _poly_str(coeffs: Sequence[int]) -> str:
    return str(Poly(list(coeffs), X).as_expr())


# --------------------------------------------------------------------------
# multiplicative classes of spectral radii


@dataclass(frozen=True)
class PowerWitness:
    """``rho_i ** a == rho_j ** b`` verified through minimal polynomials."""

    i: int
    j: int
    a: int
    b: int
    minpoly: tuple[int, ...]

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "a": self.a, "b": self.b, "minpoly": list(self.minpoly)}


@dataclass(frozen=True)
class RadiusClasses:
    classes: tuple[tuple[int, ...], ...]
    witnesses: tuple[PowerWitness, ...]
    exponent_bound: int
    # pairs (i, j) certified to admit no relation with exponents <= E
    separations: tuple[tuple[int, int], ...]

    def class_of(self, i: int) -> int:
        return next(k for k, c in enumerate(self.classes) if i in c)

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "witnesses": [w.to_json() for w in self.witnesses],
            "independent_up_to": self.exponent_bound,
            "separated_pairs": [list(p) for p in self.separations],
        }


def _power_minpoly(minpoly: Sequence[int], a: int, ball: Ball) -> Poly:
    """Minimal polynomial of ``r ** a`` where ``r`` is the root of ``minpoly`` in ``ball``."""
    m = Poly(list(minpoly), _Y)
    res = Poly(sympy.resultant(m.as_expr(), X - _Y**a, _Y), X)
    _, factors = sympy.factor_list(res.as_expr(), X)
    lo = sympy.Rational(ball.lower.numerator, ball.lower.denominator)
    hi = sympy.Rational(ball.upper.numerator, ball.upper.denominator)
    for f, _ in factors:
        fp = Poly(f, X)
        if fp.count_roots(lo, hi) > 0:
            return fp if fp.LC() > 0 else -fp
    raise PrecisionError("power ball lost its root")


def _equal_powers(r1: SpectrumReport, a: int, r2: SpectrumReport, b: int) -> tuple[int, ...] | None:
    p1 = r1.rho**a
    p2 = r2.rho**b
    if not p1.overlaps(p2):
        return None
    f1 = _power_minpoly(r1.minpoly, a, p1)
    f2 = _power_minpoly(r2.minpoly, b, p2)
    if f1 != f2:
        return None
    lo = min(p1.lower, p2.lower)
    hi = max(p1.upper, p2.upper)
    if f1.count_roots(sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator)) == 1:
        return tuple(int(c) for c in f1.all_coeffs())
    raise PrecisionError("radius balls too wide to separate conjugates")


def _log_ball(r: SpectrumReport) -> Ball:
    prec = r.rho.prec
    with mpmath.workprec(prec + 32):
        val = mpmath.log(mpmath.mpf(r.rho.mid.numerator) / r.rho.mid.denominator)
        man, exp = val.man_exp
        mid = Fraction(int(man)) * Fraction(2) ** int(exp)
    # |d log| <= rad / mig, plus the mpmath rounding
    rad = r.rho.rad / r.rho.mig() + Fraction(1, 1 << prec)
    return Ball._make(mid, rad, prec)


def radii_mult_classes(reports: Sequence[SpectrumReport], exponent_bound: int = 20) -> RadiusClasses:
    """Partition radii by exact relations ``rho_i^a = rho_j^b`` with ``1 <= a, b <= E``."""
    n = len(reports)
    for r in reports:
        if not r.rho_exceeds_one():
            raise DomainError("radii must exceed 1")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    witnesses = []
    separations = []
    logs = [_log_ball(r) for r in reports]
    for i in range(n):
        for j in range(i + 1, n):
            found = None
            # candidate from lattice reduction on the logarithms
            try:
                cert = find_integer_relation([logs[i], logs[j]], exponent_bound)
            except PrecisionError:
                cert = None
            if cert is not None and cert.found:
                a, b = cert.coefficients
                a, b = (a, -b) if a > 0 else (-a, b)
                if a >= 1 and b >= 1:
                    mp = _equal_powers(reports[i], a, reports[j], b)
                    if mp is not None:
                        found = PowerWitness(i, j, a, b, mp)
            if found is None:
                # exhaustive interval separation certifies the absence up to E
                for a in range(1, exponent_bound + 1):
                    pa = reports[i].rho**a
                    for b in range(1, exponent_bound + 1):
                        if pa.overlaps(reports[j].rho**b):
                            mp = _equal_powers(reports[i], a, reports[j], b)
                            if mp is not None:
                                found = PowerWitness(i, j, a, b, mp)
                                break
                    if found:
                        break
            if found is not None:
                witnesses.append(found)
                parent[find(j)] = find(i)
            else:
                separations.append((i, j))
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(sorted((tuple(g) for g in groups.values()), key=lambda c: c[0]))
    return RadiusClasses(classes, tuple(witnesses), exponent_bound, tuple(separations))
