import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from looplang.algebra import FiniteSemigroupTable
from looplang.automata import (
    Dfa,
    Nfa,
    accepted_words,
    complement,
    concat,
    cone,
    determinize,
    dfa_equivalent,
    difference,
    empty_dfa,
    intersect,
    inverse_morphism_image,
    kleene_star,
    language_layers,
    left_quotient,
    membership,
    minimize,
    monoid_iso_check,
    normalize_labels,
    right_quotient,
    syntactic_monoid,
    transition_monoid,
    trim,
    union,
    word_set_dfa,
)
from looplang.corpus import builtin, cyclic_group
from looplang.errors import AlphabetMismatch, SizeLimitExceeded
from looplang.loopcore import loop_problem_dfa
from strategies import dfas, nfas

SIGMA = ("a", "b")
MAX = 6


def words(max_len=MAX, alphabet=SIGMA):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def nfa_accepts(a: Nfa, word) -> bool:
    """Depth-first search over labelled paths."""
    idx = {s: i for i, s in enumerate(a.alphabet)}
    stack = [(a.start, 0)]
    seen = set()
    while stack:
        q, i = stack.pop()
        if (q, i) in seen:
            continue
        seen.add((q, i))
        if i == len(word):
            if q in a.terminals:
                return True
            continue
        for p, x, r in a.edges:
            if p == q and x == idx[word[i]]:
                stack.append((r, i + 1))
    return False


def accepts(a, word) -> bool:
    if isinstance(a, Dfa):
        q = a.start
        for s in word:
            q = a.delta[q][a.alphabet.index(s)]
            if q < 0:
                return False
        return q in a.terminals
    return nfa_accepts(a, word)


def lang(a, max_len=MAX):
    return {w for w in words(max_len, a.alphabet) if accepts(a, w)}


def even_dfa():
    return Dfa(("a", "a'"), [[1, 1], [0, 0]], 0, {0})


def test_normalize_labels_subdivides_and_closes():
    n = normalize_labels(SIGMA, 2, [(0, ("a", "b"), 1)], 0, {1})
    assert n.n_states == 3 and len(n.edges) == 2
    assert lang(n, 3) == {("a", "b")}
    n = normalize_labels(SIGMA, 3, [(0, (), 1), (1, ("a",), 2)], 0, {2})
    assert lang(n, 2) == {("a",)}


def test_trim_and_empty():
    d = Dfa(SIGMA, [[0, -1], [1, 1]], 0, {0})
    assert trim(d).n_states == 1
    e = trim(Dfa(SIGMA, [[1, 1], [1, 1]], 0, ()))
    assert e.n_states <= 1 and not e.terminals


def test_determinize_ends_in_a():
    n = Nfa(SIGMA, 2, {(0, 0, 0), (0, 1, 0), (0, 0, 1)}, 0, {1})
    d = minimize(determinize(n))
    assert d.n_states == 2
    assert lang(d, 8) == lang(n, 8)


def test_minimize_even_length_with_redundant_states():
    # six states cycling parity: three copies of the two-state automaton
    delta = [[(q + 1) % 6] * 2 for q in range(6)]
    d = Dfa(("a", "a'"), delta, 0, {0, 2, 4})
    m = minimize(d)
    assert m.n_states == 2
    assert dfa_equivalent(m, even_dfa())[0]


def test_empty_language_convention():
    m = minimize(Dfa(SIGMA, [[0, 0]], 0, ()))
    assert m.n_states == 1 and not m.terminals
    assert m == empty_dfa(SIGMA)


def test_dfa_equivalent_witness():
    odd = Dfa(("a", "a'"), [[1, 1], [0, 0]], 0, {1})
    ok, wit = dfa_equivalent(even_dfa(), odd)
    assert not ok and wit == ()


def test_membership_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        membership(even_dfa(), ("z",))
    assert membership(even_dfa(), ())


def test_cone():
    d = even_dfa()
    assert accepts(cone(d, 0), ())
    dead = Dfa(SIGMA, [[1, -1], [1, 1]], 0, {0})
    assert not cone(dead, 1).terminals


def test_quotients_and_star_examples():
    assert lang(kleene_star(empty_dfa(SIGMA)), 3) == {()}
    odd = left_quotient(even_dfa(), ("a",))
    assert dfa_equivalent(odd, Dfa(("a", "a'"), [[1, 1], [0, 0]], 0, {1}))[0]
    rho = {"a": ("a",), "a'": ("a'",)}
    assert dfa_equivalent(inverse_morphism_image(even_dfa(), rho, ("a", "a'")), even_dfa())[0]


@given(dfas())
def test_minimize_preserves_language_and_is_minimal(d):
    m = minimize(d)
    assert lang(m) == lang(d)
    # pairwise distinguishable states (Myhill-Nerode) within n letters
    n = m.n_states
    residuals = [frozenset(w for w in words(n, m.alphabet) if accepts(Dfa(m.alphabet, m.delta, q, m.terminals), w))
                 for q in range(n)]
    assert len(set(residuals)) == n
    assert minimize(m) == m


@given(nfas())
def test_determinize_preserves_language(n):
    assert lang(determinize(n)) == lang(n)


@given(dfas(), dfas())
def test_equivalence_matches_enumeration(d1, d2):
    ok, wit = dfa_equivalent(d1, d2)
    l1, l2 = lang(d1), lang(d2)
    if ok:
        assert l1 == l2
    else:
        assert accepts(d1, wit) != accepts(d2, wit)
        shorter = [w for w in (l1 ^ l2) if len(w) < len(wit)]
        assert not shorter


@given(dfas(max_states=4), dfas(max_states=4))
def test_boolean_operations(d1, d2):
    l1, l2 = lang(d1), lang(d2)
    everything = set(words())
    assert lang(intersect(d1, d2)) == l1 & l2
    assert lang(union(d1, d2)) == l1 | l2
    assert lang(difference(d1, d2)) == l1 - l2
    assert lang(complement(d1)) == everything - l1


@given(dfas(max_states=3), dfas(max_states=3))
def test_concat_matches_enumeration(d1, d2):
    l1, l2 = lang(d1, 5), lang(d2, 5)
    expect = {u + v for u in l1 for v in l2 if len(u + v) <= 5}
    assert lang(concat(d1, d2), 5) == expect


@given(dfas(max_states=3))
def test_kleene_star_matches_enumeration(d):
    base = {w for w in lang(d, 5) if w}
    expect = {()}
    frontier = {()}
    while frontier:
        frontier = {u + v for u in frontier for v in base if len(u + v) <= 5} - expect
        expect |= frontier
    assert lang(kleene_star(d), 5) == expect


@given(dfas(), st.lists(st.sampled_from(SIGMA), max_size=3).map(tuple))
def test_quotients_match_enumeration(d, w):
    assert lang(left_quotient(d, w), 4) == {x for x in words(4) if accepts(d, w + x)}
    assert lang(right_quotient(d, w), 4) == {x for x in words(4) if accepts(d, x + w)}


@given(dfas(), st.fixed_dictionaries({
    "a": st.lists(st.sampled_from(SIGMA), max_size=2).map(tuple),
    "b": st.lists(st.sampled_from(SIGMA), max_size=2).map(tuple),
}))
def test_inverse_morphism_image_matches_enumeration(d, rho):
    got = inverse_morphism_image(d, rho, SIGMA)
    expect = {v for v in words(4) if accepts(d, tuple(s for y in v for s in rho[y]))}
    assert lang(got, 4) == expect


@given(dfas(max_states=4))
def test_language_layers_and_accepted_words(d):
    layers = language_layers(d, 4)
    for n, layer in enumerate(layers):
        for code, w in enumerate(itertools.product(SIGMA, repeat=n)):
            assert bool(layer[code]) == accepts(d, w)
    assert accepted_words(d, 4) == lang(d, 4)


def test_word_set_dfa():
    ws = {("a",), ("a", "b"), ()}
    assert lang(word_set_dfa(SIGMA, ws), 4) == ws


def test_transition_monoid_examples():
    loops = Dfa(SIGMA, [[0, 0]], 0, {0})
    assert len(transition_monoid(loops)) == 1
    z2 = builtin("Z2")
    tm = transition_monoid(loop_problem_dfa(z2.table, z2.sigma))
    assert len(tm) == 2
    assert monoid_iso_check(tm.table, cyclic_group(2)) is not None


@given(st.lists(st.sampled_from(("a", "a'", "b", "b'")), max_size=6),
       st.lists(st.sampled_from(("a", "a'", "b", "b'")), max_size=6))
def test_transition_monoid_is_a_morphism(u, v):
    s3 = builtin("S3")
    d = loop_problem_dfa(s3.table, s3.sigma)
    tm = transition_monoid(d)
    hat = s3.sigma.alphabet.hat()
    names = {"a": hat[0], "a'": hat[1], "b": hat[2], "b'": hat[3]}
    u = tuple(names[s] for s in u)
    v = tuple(names[s] for s in v)
    assert tm.lookup(u + v) == tm.product(tm.lookup(u), tm.lookup(v))


def test_syntactic_monoid_examples():
    everything = Dfa(SIGMA, [[0, 0]], 0, {0})
    assert len(syntactic_monoid(everything)) == 1
    assert len(syntactic_monoid(even_dfa())) == 2


def _direct_product(t1, t2):
    n2 = len(t2)
    names = tuple(f"{a}{b}" for a in t1.names for b in t2.names)
    table = [[t1.table[a // n2][b // n2] * n2 + t2.table[a % n2][b % n2]
              for b in range(len(names))] for a in range(len(names))]
    return FiniteSemigroupTable(names, table, t1.identity * n2 + t2.identity)


def test_monoid_iso_check_examples():
    z2 = cyclic_group(2)
    assert monoid_iso_check(z2, z2) is not None
    assert monoid_iso_check(cyclic_group(4), _direct_product(z2, z2)) is None
    assert monoid_iso_check(builtin("S3").table, cyclic_group(6)) is None
    with pytest.raises(SizeLimitExceeded):
        monoid_iso_check(cyclic_group(70), cyclic_group(70))
