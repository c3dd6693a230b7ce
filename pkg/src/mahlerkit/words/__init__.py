"""Automata, morphisms and the Cobham construction."""

from .cobham import CobhamSystem, cobham_construct
from .dfao import (
    Dfao,
    baum_sweet_dfao,
    paperfolding_dfao,
    powers_of_two_dfao,
    thue_morse_dfao,
)
from .morphism import (
    Morphism,
    fibonacci_morphism,
    incidence_matrix,
    morphic_prefix,
    thue_morse_morphism,
    tribonacci_morphism,
    w_word_morphism,
)
from .sierpinski import SIERPINSKI_T, sierpinski_factor, sierpinski_series, sierpinski_term


def dfao_term(d: Dfao, n: int):
    return d.term(n)


__all__ = [
    "CobhamSystem",
    "Dfao",
    "Morphism",
    "SIERPINSKI_T",
    "baum_sweet_dfao",
    "cobham_construct",
    "dfao_term",
    "fibonacci_morphism",
    "incidence_matrix",
    "morphic_prefix",
    "paperfolding_dfao",
    "powers_of_two_dfao",
    "sierpinski_factor",
    "sierpinski_series",
    "sierpinski_term",
    "thue_morse_dfao",
    "thue_morse_morphism",
    "tribonacci_morphism",
    "w_word_morphism",
]
