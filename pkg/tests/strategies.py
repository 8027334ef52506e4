"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from looplang.automata import Dfa, Nfa
from looplang.words import SignedLetter


def signed_words(n_letters: int = 2, max_size: int = 12):
    letter = st.builds(SignedLetter, st.integers(0, n_letters - 1), st.booleans())
    return st.lists(letter, max_size=max_size).map(tuple)


def positive_words(n_letters: int = 2, max_size: int = 6):
    letter = st.builds(SignedLetter, st.integers(0, n_letters - 1), st.just(False))
    return st.lists(letter, max_size=max_size).map(tuple)


@st.composite
def dfas(draw, alphabet=("a", "b"), max_states: int = 5, partial: bool = True):
    n = draw(st.integers(1, max_states))
    low = -1 if partial else 0
    delta = [[draw(st.integers(low, n - 1)) for _ in alphabet] for _ in range(n)]
    terms = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(alphabet, delta, 0, terms)


@st.composite
def nfas(draw, alphabet=("a", "b"), max_states: int = 4):
    n = draw(st.integers(1, max_states))
    triples = st.tuples(st.integers(0, n - 1), st.integers(0, len(alphabet) - 1), st.integers(0, n - 1))
    edges = draw(st.sets(triples, max_size=3 * n))
    terms = draw(st.sets(st.integers(0, n - 1)))
    return Nfa(alphabet, n, edges, 0, terms)
