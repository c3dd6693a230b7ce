"""Multivariate Mahler systems from morphic words (Cobham's construction)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith.intmatrix import IntMatrix
from ..series.mahler import Mismatch, Ok, verify_identity
from ..series.puiseux import PuiseuxSeries
from ..series.ratfunc import RationalFunction, RationalFunctionMatrix
from ..systems.system import MahlerSystem
from .morphism import Morphism


def _abelianize(m: Morphism, word: str) -> list[int]:
    v = [0] * len(m.alphabet)
    for c in word:
        v[m.index(c)] += 1
    return v


@dataclass(frozen=True)
class CobhamSystem:
    morphism: Morphism
    system: MahlerSystem
    weights: dict[str, Fraction]

    @property
    def T(self) -> IntMatrix:
        return self.system.T

    @property
    def A(self) -> RationalFunctionMatrix:
        return self.system.A

    def components(self, order: int) -> list[PuiseuxSeries]:
        """``f_a(z) = sum_{n : w_n = a} z^{psi(w_<n)}`` up to total degree ``order``."""
        m = self.morphism
        d = len(m.alphabet)
        word = m.prefix(order + 1)
        terms: list[dict] = [{} for _ in range(d)]
        v = [0] * d
        for c in word:
            k = m.index(c)
            terms[k][tuple(v)] = 1
            v[k] += 1
        return [PuiseuxSeries(d, t, order=order) for t in terms]

    def check(self, order: int = 30) -> Ok | Mismatch:
        """Check ``(f_a) = A(z) (f_a(Tz))`` to ``order`` against the word itself."""
        return self.system.check_solution(self.components(order), order)

    def specialization(self, order: int) -> PuiseuxSeries:
        """``sum_a weight(a) f_a(z, ..., z)`` as a univariate series."""
        out = PuiseuxSeries.zero(1, order=order)
        for a, f in zip(self.morphism.alphabet, self.components(order)):
            w = self.weights[a]
            if w:
                out = out + f.specialize_diagonal().scale(w)
        return out

    def check_specialization(self, order: int) -> Ok | Mismatch:
        coded = self.morphism.coded_prefix(order + 1)
        oracle = PuiseuxSeries(1, {(n,): c for n, c in enumerate(coded)}, order=order)
        return verify_identity(self.specialization(order), oracle, order)

    def to_json(self) -> dict:
        out = self.system.to_json()
        out["morphism"] = self.morphism.to_json()
        out["weights"] = {a: str(w) for a, w in self.weights.items()}
        out["variables"] = [f"z{i}" for i in range(len(self.morphism.alphabet))]
        return out


def cobham_construct(m: Morphism) -> CobhamSystem:
    """Build ``T = M^t`` and ``A_{a,b} = sum_{k : phi(b)_k = a} z^{psi(phi(b)_<k)}``."""
    if not m.is_prolongable():
        from ..errors import DomainError

        raise DomainError(f"morphism is not prolongable on {m.seed!r}")
    d = len(m.alphabet)
    t = m.incidence_matrix().T
    rows = []
    for a in m.alphabet:
        row = []
        for b in m.alphabet:
            img = m.images[b]
            terms: dict = {}
            for k, c in enumerate(img):
                if c == a:
                    e = tuple(_abelianize(m, img[:k]))
                    terms[e] = terms.get(e, 0) + 1
            row.append(RationalFunction(PuiseuxSeries(d, terms)) if terms else RationalFunction.zero(d))
        rows.append(row)
    a_mat = RationalFunctionMatrix(rows, d)
    weights = {a: m.code(a) for a in m.alphabet}
    return CobhamSystem(m, MahlerSystem(t, a_mat, name=m.name), weights)
