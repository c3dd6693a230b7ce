"""Deterministic finite automata with output reading base-q digits."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from ..arith.rational import format_rational, parse_rational
from ..errors import DomainError, SchemaError


def digits_msd(n: int, base: int) -> list[int]:
    """Base-``base`` digits of ``n``, most significant first; ``[]`` for 0."""
    out = []
    while n:
        n, r = divmod(n, base)
        out.append(r)
    return out[::-1]


@dataclass(frozen=True)
class Dfao:
    base: int
    states: tuple[str, ...]
    init: str
    delta: Mapping[str, tuple[str, ...]]
    out: Mapping[str, Fraction]

    def __post_init__(self):
        if self.base < 2:
            raise DomainError("base must be at least 2")
        if self.init not in self.states:
            raise DomainError(f"initial state {self.init!r} is not a state")
        for s in self.states:
            row = self.delta.get(s)
            if row is None or len(row) != self.base:
                raise DomainError(f"transition from {s!r} must list {self.base} targets")
            if any(t not in self.states for t in row):
                raise DomainError(f"transition from {s!r} leaves the state set")
            if s not in self.out:
                raise DomainError(f"state {s!r} has no output")

    def state_of(self, n: int) -> str:
        if n < 0:
            raise DomainError("index must be non-negative")
        s = self.init
        for d in digits_msd(n, self.base):
            s = self.delta[s][d]
        return s

    def term(self, n: int) -> Fraction:
        return self.out[self.state_of(n)]

    def terms(self, count: int) -> list[Fraction]:
        return [self.term(n) for n in range(count)]

    def stream(self) -> Iterator[Fraction]:
        n = 0
        while True:
            yield self.term(n)
            n += 1

    def reachable(self) -> set[str]:
        seen, todo = {self.init}, [self.init]
        while todo:
            s = todo.pop()
            for t in self.delta[s]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    def max_abs_output(self) -> Fraction:
        return max(abs(self.out[s]) for s in self.reachable())

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "states": list(self.states),
            "init": self.init,
            "delta": {s: list(self.delta[s]) for s in self.states},
            "out": {s: format_rational(self.out[s]) for s in self.states},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Dfao":
        for key in ("base", "states", "init", "delta", "out"):
            if key not in data:
                raise SchemaError(f"missing key {key!r}", f"/{key}")
        try:
            return cls(
                int(data["base"]),
                tuple(data["states"]),
                data["init"],
                {s: tuple(v) for s, v in data["delta"].items()},
                {s: parse_rational(v) for s, v in data["out"].items()},
            )
        except DomainError as exc:
            raise SchemaError(str(exc), "/") from exc


def _make(base, delta, out, init) -> Dfao:
    return Dfao(base, tuple(delta), init, {k: tuple(v) for k, v in delta.items()},
                {k: Fraction(v) for k, v in out.items()})


def thue_morse_dfao() -> Dfao:
    """Parity of the binary digit sum."""
    return _make(2, {"even": ["even", "odd"], "odd": ["odd", "even"]}, {"even": 0, "odd": 1}, "even")


def powers_of_two_dfao() -> Dfao:
    """Characteristic sequence of ``{2^k : k >= 0}``."""
    return _make(
        2,
        {"none": ["none", "one"], "one": ["one", "many"], "many": ["many", "many"]},
        {"none": 0, "one": 1, "many": 0},
        "none",
    )


def baum_sweet_dfao() -> Dfao:
    """1 iff the binary expansion has no block of zeros of odd length (n = 0 gives 1)."""
    return _make(
        2,
        {"even": ["odd", "even"], "odd": ["even", "dead"], "dead": ["dead", "dead"]},
        {"even": 1, "odd": 0, "dead": 0},
        "even",
    )


def paperfolding_dfao() -> Dfao:
    """Regular paperfolding: for ``n = 2^k (2m+1)`` the term is 1 iff m is even; term 0 is 0.

    States record the bit in front of the lowest 1 read so far together with
    the last bit read.
    """
    return _make(
        2,
        {
            "start": ["start", "p0_1"],
            "p0_1": ["p0_0", "p1_1"],
            "p0_0": ["p0_0", "p0_1"],
            "p1_1": ["p1_0", "p1_1"],
            "p1_0": ["p1_0", "p0_1"],
        },
        {"start": 0, "p0_1": 1, "p0_0": 1, "p1_1": 0, "p1_0": 0},
        "start",
    )
