"""Corpus verification suites behind ``looplang verify``."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

from .algebra import SEMIGROUP, eval_word, is_surjective
from .automata import dfa_equivalent, morphism_from_generators, syntactic_monoid
from .closure import identity_language_check, is_deletion_closed, is_insertion_closed, reconstruct_monoid
from .corpus import CorpusItem
from .errors import LoopError
from .invhull import verify_inverse_hull_theorem, verify_minimality
from .loopcore import (
    distinct_cones_witness,
    generator_change,
    loop_automaton,
    loop_membership,
    loop_problem_dfa,
    monoid_view,
    semigroup_monoid_relation_check,
    validate_zigzag,
    zigzag_check,
)
from .transduce import (
    cs_loop_problem,
    cs_subgroup_restriction_check,
    cs_transducer_spec,
    multiplication_table_language,
    nonreturning_loops,
    table_membership,
)
from .words import shortlex_words

CLAIMS = {
    "zigzag": "loop membership agrees with zig-zag witnesses",
    "insertion": "loop problems are insertion-closed",
    "deletion": "loop problems of right cancellative monoids are deletion-closed",
    "semimonoid": "semigroup and monoid loop problems determine each other",
    "genchange": "a change of generators acts by an inverse morphism",
    "cs-restriction": "a maximal subgroup's loop problem is a restriction",
    "cs-transducer": "completely simple loop problems come from the group's word problem",
    "regularity": "the loop problem is regular exactly for finite monoids",
    "minimality": "the loop automaton of a right cancellative monoid is minimal",
    "invhull": "the syntactic monoid of the loop problem is the inverse hull",
    "multtable": "the multiplication table is a transduction of the loop problem",
    "reconstruct": "a monoid is recovered from its loop problem",
}
SUITES = tuple(CLAIMS)


@dataclass
class CheckRecord:
    item: str
    suite: str
    check: str
    claim: str
    passed: bool
    witness: Optional[str] = None
    seconds: float = 0.0


def _render(word, alphabet) -> str:
    return alphabet.render(word) if word is not None else None


def _zigzag(item):
    if not item.finite:
        return []
    la = loop_automaton(item.table, item.sigma)
    hat = item.sigma.alphabet.hat()
    bad = None
    e = la.identity
    for w in shortlex_words(hat, 6):
        member = loop_membership(item.table, item.sigma, w)
        wit = zigzag_check(item.table, item.sigma, e, e, w)
        if member != (wit is not None) or (wit and not validate_zigzag(item.table, item.sigma, e, e, wit)):
            bad = w
            break
    return [("loop_membership/zigzag_check", bad is None, _render(bad, item.sigma.alphabet))]


def _insertion(item):
    if not item.finite:
        return []
    r = is_insertion_closed(loop_problem_dfa(item.table, item.sigma))
    return [("is_insertion_closed", r.holds, None if r.holds else repr(r.counterexample))]


def _deletion(item):
    if not item.finite or not item.right_cancellative:
        return []
    r = is_deletion_closed(loop_problem_dfa(item.table, item.sigma))
    ident = identity_language_check(loop_problem_dfa(item.table, item.sigma))
    three_way = ident.holds == ident.details["preimage_agrees"]
    return [("is_deletion_closed", r.holds, None if r.holds else repr(r.counterexample)),
            ("identity_language_check", ident.holds and three_way, None)]


def _semimonoid(item):
    if not item.is_monoid:
        return []
    sg = item.sigma.with_mode(SEMIGROUP)
    if not is_surjective(item.table, sg):
        return []
    r = semigroup_monoid_relation_check(item.table, sg)
    w = item.sigma.alphabet.render(r.identity_word)
    return [("semigroup_monoid_relation_check", r.holds, f"w={w}")]


def _genchange(item):
    out = []
    for k, alt in enumerate(item.alt_sigmas):
        r = generator_change(item.sigma, alt, item.table)
        out.append((f"generator_change[{k}]", r.holds, None if r.holds else repr(r.witness)))
    return out


def _cs_restriction(item):
    if item.rees is None or not item.subgroup_letters:
        return []
    r = cs_subgroup_restriction_check(item.rees, item.sigma, item.subgroup_letters)
    return [("cs_subgroup_restriction_check", r.holds, None if r.holds else repr(r.witness))]


def _cs_transducer(item):
    if item.rees is None or item.group_sigma is None:
        return []
    spec = cs_transducer_spec(item.rees, item.group_sigma, item.sigma)
    res = cs_loop_problem(spec)
    ok1, w1 = dfa_equivalent(res.loop_dfa, loop_problem_dfa(item.table, item.sigma))
    ok2, w2 = dfa_equivalent(res.K, nonreturning_loops(item.table, item.sigma))
    return [("cs_loop_problem", ok1, None if ok1 else _render(w1, item.sigma.alphabet)),
            ("nonreturning_loops", ok2, None if ok2 else _render(w2, item.sigma.alphabet)),
            ("cs_transducer_spec.check", spec.check(), None)]


def _regularity(item):
    if item.finite:
        la = loop_automaton(item.table, item.sigma)
        d = loop_problem_dfa(item.table, item.sigma)
        ok, _ = dfa_equivalent(d, la.nfa)
        return [("loop_problem_dfa", ok, f"{d.n_states} states")]
    if item.oracle is not None and item.oracle.right_divide is not None:
        w = distinct_cones_witness(item.oracle, 10)
        return [("distinct_cones_witness", w.valid, f"{len(w.words)} cones")]
    return []


def _minimality(item):
    if item.finite and item.is_monoid and item.right_cancellative:
        r = verify_minimality(item.table, item.sigma)
    elif item.oracle is not None and item.oracle.right_cancellative:
        r = verify_minimality(item.oracle, radius=4)
    else:
        return []
    return [("verify_minimality", r.passed, f"{r.separated_pairs}/{r.total_pairs} pairs")]


def _invhull(item):
    if not (item.is_monoid and item.right_cancellative):
        return []
    r = verify_inverse_hull_theorem(item.table, item.sigma)
    return [("verify_inverse_hull_theorem", r.holds, f"order {r.hull_order}")]


def _multtable(item):
    if not item.finite or len(item.sigma.alphabet) > 2:
        return []
    sg = item.sigma.with_mode(SEMIGROUP)
    d = multiplication_table_language(item.table, sg)
    blocks = [w for w in shortlex_words(sg.alphabet.positive(), 3) if w]
    bad = next(((u, v, z) for u in blocks for v in blocks for z in blocks
                if table_membership(d, u, v, z)
                != (eval_word(sg, item.table, u + v) == eval_word(sg, item.table, tuple(reversed(z))))),
               None)
    wit = None if bad is None else "#".join(sg.alphabet.render(b) for b in bad)
    return [("multiplication_table_language", bad is None, wit)]


def _reconstruct(item):
    if not item.finite:
        return []
    m, tau = monoid_view(item.table, item.sigma)
    d = loop_problem_dfa(item.table, item.sigma)
    t2, s2 = reconstruct_monoid(d, tau.alphabet)
    iso = morphism_from_generators(m, tau.assignment, t2, s2.assignment)
    return [("reconstruct_monoid", iso is not None, f"order {len(t2)}"),
            ("syntactic_monoid", len(syntactic_monoid(d)) >= len(t2), None)]


_RUNNERS = {
    "zigzag": _zigzag,
    "insertion": _insertion,
    "deletion": _deletion,
    "semimonoid": _semimonoid,
    "genchange": _genchange,
    "cs-restriction": _cs_restriction,
    "cs-transducer": _cs_transducer,
    "regularity": _regularity,
    "minimality": _minimality,
    "invhull": _invhull,
    "multtable": _multtable,
    "reconstruct": _reconstruct,
}


def run_suite_on_item(suite: str, item: CorpusItem) -> list:
    t0 = time.perf_counter()
    try:
        results = _RUNNERS[suite](item)
    except LoopError as e:
        results = [(suite, False, f"{type(e).__name__}: {e}")]
    dt = time.perf_counter() - t0
    share = dt / max(len(results), 1)
    return [CheckRecord(item.name, suite, check, CLAIMS[suite], bool(ok), wit, round(share, 4))
            for check, ok, wit in results]


def _task(args):
    suite, item = args
    return run_suite_on_item(suite, item)


def run_verification(items, suites, jobs: int = 1) -> list:
    """Records for every (suite, item) pair, in suite-then-item order."""
    tasks = [(s, it) for s in suites for it in items]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_task, tasks))
    else:
        chunks = [_task(t) for t in tasks]
    return [rec for chunk in chunks for rec in chunk]


def record_dict(rec: CheckRecord) -> dict:
    return asdict(rec)
