import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from looplang.algebra import GeneratorMap, ReesSpec, eval_word, rees_to_table
from looplang.automata import Dfa, dfa_equivalent, kleene_star
from looplang.corpus import REES, builtin, cyclic_group
from looplang.loopcore import loop_problem_dfa
from looplang.transduce import (
    MARK,
    Transducer,
    cs_loop_problem,
    cs_subgroup_restriction_check,
    cs_transducer,
    cs_transducer_spec,
    multiplication_table_language,
    nonreturning_loops,
    table_membership,
    transducer_image,
    transducer_inverse,
)
from looplang.words import Alphabet, shortlex_words
from strategies import dfas

AB = ("a", "b")


def lang(nfa_or_dfa, max_len):
    d = nfa_or_dfa
    out = set()
    for n in range(max_len + 1):
        for w in itertools.product(d.alphabet, repeat=n):
            if isinstance(d, Dfa):
                ok = d.accepts(w)
            else:
                ok = bool(d.run(w) & d.terminal_mask)
            if ok:
                out.add(w)
    return out


def identity_transducer():
    return Transducer(AB, AB, 1, [(0, (s,), (s,), 0) for s in AB], 0, {0})


@st.composite
def transducers(draw):
    n = draw(st.integers(1, 3))
    word = st.lists(st.sampled_from(AB), max_size=2).map(tuple)
    out = st.lists(st.sampled_from(AB), min_size=1, max_size=2).map(tuple)
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), word, out, st.integers(0, n - 1)), max_size=5))
    terms = draw(st.sets(st.integers(0, n - 1), min_size=1))
    return Transducer(AB, AB, n, edges, 0, terms)


def image_by_paths(t, d, max_out):
    """Outputs of accepting paths with at most ``max_out`` edges (every
    edge writes at least one symbol)."""
    found = set()
    stack = [(t.start, (), ())]
    while stack:
        q, u, v = stack.pop()
        if q in t.terminals and d.accepts(u):
            found.add(v)
        for p, a, b, r in t.edges:
            if p == q and len(v) + len(b) <= max_out:
                stack.append((r, u + a, v + b))
    return found


def test_identity_and_erasing_transducers():
    d = Dfa(AB, [[1, 0], [0, 1]], 0, {0})
    assert dfa_equivalent(transducer_image(identity_transducer(), d), d)[0]
    erase = Transducer(AB, AB, 1, [(0, (s,), (), 0) for s in AB], 0, {0})
    assert lang(transducer_image(erase, d), 3) == {()}
    empty = Dfa(AB, [[-1, -1]], 0, ())
    assert lang(transducer_image(erase, empty), 3) == set()


def test_inverse_transducer():
    t = Transducer(AB, AB, 2, [(0, ("a",), ("b", "b"), 1)], 0, {1})
    assert transducer_inverse(transducer_inverse(t)) == t
    assert transducer_inverse(identity_transducer()) == identity_transducer()


@given(transducers(), dfas(max_states=3, partial=False))
def test_image_matches_path_enumeration(t, d):
    got = {v for v in lang(transducer_image(t, d), 4)}
    assert got == image_by_paths(t, d, 4)


def test_inverse_image_recovers_inputs():
    # doubling a -> aa, b -> bb; inverse maps even blocks back
    t = Transducer(AB, AB, 1, [(0, (s,), (s, s), 0) for s in AB], 0, {0})
    d = Dfa(AB, [[1, 0], [0, 1]], 0, {0})
    back = transducer_image(transducer_inverse(t), transducer_image(t, d))
    assert dfa_equivalent(back, d)[0]


def four_generator_rees():
    z2 = cyclic_group(2)
    rees = ReesSpec(z2, 2, 2, ((0, 0), (0, 1)))
    table, elems = rees_to_table(rees)
    gens = [elems.index(e) for e in elems if e.g == 1]
    sigma = GeneratorMap(Alphabet(("a", "b", "c", "d")), tuple(gens), "semigroup")
    return rees, table, sigma


def test_cs_transducer_sizes():
    band = builtin("rees-Z2-1x1")
    spec = cs_transducer_spec(band.rees, band.group_sigma, band.sigma)
    t = cs_transducer(spec)
    assert t.n_states == 3 and len(t.edges) == 4
    rees, table, sigma = four_generator_rees()
    spec = cs_transducer_spec(rees, GeneratorMap(Alphabet(("x",)), (1,)), sigma)
    assert spec.check()
    tracked = cs_transducer(spec)
    literal = cs_transducer(spec, "row-of-y")
    y = len(sigma.alphabet)
    assert tracked.n_states == 6
    assert len(tracked.edges) == y * (2 + 2 * rees.I * rees.J)
    assert len(literal.edges) == y * (2 + 2 * rees.J)


def test_cs_transducer_spec_words_evaluate_correctly():
    rees, table, sigma = four_generator_rees()
    sg = GeneratorMap(Alphabet(("x",)), (1,))
    spec = cs_transducer_spec(rees, sg, sigma)
    g = rees.group
    for y in sigma.alphabet.positive():
        e = spec.elements[sigma.image(y)]
        assert eval_word(sg, g, spec.w[y]) == e.g
        assert g.table[e.g][eval_word(sg, g, spec.w_inv[y])] == g.identity
    for (k, i), word in spec.p_word.items():
        assert eval_word(sg, g, word) == rees.P[k][i]
        assert g.table[rees.P[k][i]][eval_word(sg, g, spec.p_inv_word[(k, i)])] == g.identity


@pytest.mark.parametrize("name", REES)
def test_cs_loop_problem(name):
    item = builtin(name)
    spec = cs_transducer_spec(item.rees, item.group_sigma, item.sigma)
    res = cs_loop_problem(spec)
    assert dfa_equivalent(res.loop_dfa, loop_problem_dfa(item.table, item.sigma))[0]
    assert dfa_equivalent(res.K, nonreturning_loops(item.table, item.sigma))[0]


def test_literal_transducer_misses_loops():
    item = builtin("rees-Z2-2x2")
    spec = cs_transducer_spec(item.rees, item.group_sigma, item.sigma)
    res = cs_loop_problem(spec, "row-of-y")
    ok, wit = dfa_equivalent(res.loop_dfa, loop_problem_dfa(item.table, item.sigma))
    assert not ok
    assert loop_problem_dfa(item.table, item.sigma).accepts(wit)


def test_cs_loop_problem_four_generators():
    rees, table, sigma = four_generator_rees()
    spec = cs_transducer_spec(rees, GeneratorMap(Alphabet(("x",)), (1,)), sigma)
    res = cs_loop_problem(spec)
    assert dfa_equivalent(res.loop_dfa, loop_problem_dfa(table, sigma))[0]


@pytest.mark.parametrize("name", ["trivial", "Z2", "S3", "T2", "right-zero-2"])
def test_nonreturning_loops_generate_loop_problem(name):
    item = builtin(name)
    k = nonreturning_loops(item.table, item.sigma)
    assert dfa_equivalent(kleene_star(k), loop_problem_dfa(item.table, item.sigma))[0]
    assert not k.accepts(())


@pytest.mark.parametrize("name", REES)
def test_subgroup_restriction(name):
    item = builtin(name)
    r = cs_subgroup_restriction_check(item.rees, item.sigma, item.subgroup_letters)
    assert r.holds


def test_multiplication_table_trivial_and_z2():
    triv = builtin("trivial")
    d = multiplication_table_language(triv.table, triv.sigma)
    a = triv.sigma.alphabet
    blocks = [w for w in shortlex_words(a.positive(), 3) if w]
    for u, v, z in itertools.product(blocks, repeat=3):
        assert table_membership(d, u, v, z)
    assert not table_membership(d, (), blocks[0], blocks[0])
    z2 = builtin("Z2")
    d = multiplication_table_language(z2.table, z2.sigma)
    for u, v, z in itertools.product(blocks, repeat=3):
        assert table_membership(d, u, v, z) == ((len(u) + len(v) + len(z)) % 2 == 0)
    assert MARK in d.alphabet


def test_multiplication_table_raw_includes_empty_blocks():
    z2 = builtin("Z2")
    raw = multiplication_table_language(z2.table, z2.sigma, raw=True)
    a = z2.sigma.alphabet.positive()[0]
    assert table_membership(raw, (), (), ())
    assert table_membership(raw, (a,), (), (a,))
