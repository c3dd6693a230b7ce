"""Morphisms on finite alphabets and their fixed points."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..arith.intmatrix import IntMatrix
from ..arith.rational import format_rational, parse_rational
from ..errors import DomainError, SchemaError


@dataclass(frozen=True)
class Morphism:
    """A morphism on single-character letters, with an optional numeric coding."""

    alphabet: tuple[str, ...]
    images: Mapping[str, str]
    coding: Mapping[str, Fraction] | None = None
    seed: str | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise DomainError("alphabet must be nonempty with distinct letters")
        if any(len(a) != 1 for a in self.alphabet):
            raise DomainError("letters must be single characters")
        for a in self.alphabet:
            img = self.images.get(a)
            if not img:
                raise DomainError(f"letter {a!r} needs a nonempty image")
            if any(c not in self.alphabet for c in img):
                raise DomainError(f"image of {a!r} uses letters outside the alphabet")
        if self.coding is not None and set(self.coding) != set(self.alphabet):
            raise DomainError("coding must assign a value to every letter")
        if self.seed is None:
            object.__setattr__(self, "seed", self.alphabet[0])
        if self.seed not in self.alphabet:
            raise DomainError("seed is not a letter")

    def index(self, letter: str) -> int:
        return self.alphabet.index(letter)

    def apply(self, word: str) -> str:
        return "".join(self.images[c] for c in word)

    def is_prolongable(self) -> bool:
        img = self.images[self.seed]
        return img[0] == self.seed and len(img) >= 2

    def prefix(self, length: int) -> str:
        """First ``length`` letters of the fixed point starting with the seed."""
        if not self.is_prolongable():
            raise DomainError(f"morphism is not prolongable on {self.seed!r}")
        word = self.seed
        while len(word) < length:
            word = self.apply(word)
        return word[:length]

    def code(self, letter: str) -> Fraction:
        if self.coding is None:
            return Fraction(self.index(letter))
        return self.coding[letter]

    def coded_prefix(self, length: int) -> list[Fraction]:
        return [self.code(c) for c in self.prefix(length)]

    def incidence_matrix(self) -> IntMatrix:
        """``M[i][j]`` counts letter ``a_i`` in the image of ``a_j``."""
        return IntMatrix([[self.images[b].count(a) for b in self.alphabet] for a in self.alphabet])

    def max_abs_code(self) -> Fraction:
        return max(abs(self.code(a)) for a in self.alphabet)

    def to_json(self) -> dict:
        out = {
            "alphabet": list(self.alphabet),
            "images": {a: self.images[a] for a in self.alphabet},
            "seed": self.seed,
        }
        if self.coding is not None:
            out["coding"] = {a: format_rational(self.coding[a]) for a in self.alphabet}
        return out

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "Morphism":
        for key in ("alphabet", "images"):
            if key not in data:
                raise SchemaError(f"missing key {key!r}", f"/{key}")
        coding = data.get("coding")
        try:
            if coding is not None:
                coding = {a: parse_rational(v) for a, v in coding.items()}
            return cls(tuple(data["alphabet"]), dict(data["images"]), coding, data.get("seed"), name)
        except DomainError as exc:
            raise SchemaError(str(exc), "/") from exc


def morphic_prefix(m: Morphism, length: int) -> tuple[str, list[Fraction]]:
    word = m.prefix(length)
    return word, [m.code(c) for c in word]


def incidence_matrix(m: Morphism) -> IntMatrix:
    return m.incidence_matrix()


def _ident(alphabet):
    return {a: Fraction(i) for i, a in enumerate(alphabet)}


def fibonacci_morphism() -> Morphism:
    return Morphism(("0", "1"), {"0": "01", "1": "0"}, _ident("01"), "0", "fibonacci")


def tribonacci_morphism() -> Morphism:
    return Morphism(("0", "1", "2"), {"0": "01", "1": "02", "2": "0"}, _ident("012"), "0", "tribonacci")


def w_word_morphism() -> Morphism:
    return Morphism(("0", "1"), {"0": "0110", "1": "101"}, _ident("01"), "0", "w-word")


def thue_morse_morphism() -> Morphism:
    return Morphism(("0", "1"), {"0": "01", "1": "10"}, _ident("01"), "0", "thue-morse")
