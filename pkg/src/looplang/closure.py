"""Insertion and deletion closure of regular languages, identity languages,
and reconstruction of a finite monoid from its loop problem."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .algebra import MONOID, FiniteSemigroupTable, GeneratorMap
from .automata import (
    Dfa,
    complete,
    dfa_equivalent,
    minimize,
    syntactic_monoid,
)
from .errors import NotALoopProblem
from .words import Alphabet, SignedLetter, involute

_MARK = object()


class Property(enum.Enum):
    INSERTION = "insertion"
    DELETION = "deletion"
    IDENTITY_LANGUAGE = "identity-language"


@dataclass(frozen=True)
class ClosureReport:
    property: Property
    holds: bool
    counterexample: Optional[tuple] = None  # (x, w, y)
    details: Optional[dict] = None


def _prepare(d) -> Dfa:
    return complete(minimize(d))


def _violation_triple(c: Dfa, insertion: bool):
    """Shortlex-least ``x#w#y`` (``#`` ordered last) violating the closure
    property, as a triple, or ``None``.

    Breadth-first search over the product of three copies of the complete
    minimal automaton, so the decision is polynomial in its size.
    """
    k = len(c.alphabet)
    start = (0, c.start)
    parent = {start: None}
    queue = deque([start])
    F = c.terminals
    while queue:
        st = queue.popleft()
        phase = st[0]
        if phase == 2:
            _, a, b = st
            bad = (a in F and b not in F) if insertion else (a not in F and b in F)
            if bad:
                return _unwind(c, parent, st)
        moves = []
        for s in range(k):
            if phase == 0:
                moves.append((s, (0, c.delta[st[1]][s])))
            elif phase == 1:
                _, a, r, b = st
                moves.append((s, (1, a, c.delta[r][s], c.delta[b][s])))
            else:
                _, a, b = st
                moves.append((s, (2, c.delta[a][s], c.delta[b][s])))
        if phase == 0:
            moves.append((_MARK, (1, st[1], c.start, st[1])))
        elif phase == 1 and st[2] in F:
            moves.append((_MARK, (2, st[1], st[3])))
        for s, nxt in moves:
            if nxt not in parent:
                parent[nxt] = (st, s)
                queue.append(nxt)
    return None


def _unwind(c, parent, st):
    symbols = []
    while parent[st] is not None:
        st, s = parent[st]
        symbols.append(s)
    symbols.reverse()
    parts = [[]]
    for s in symbols:
        if s is _MARK:
            parts.append([])
        else:
            parts[-1].append(c.alphabet[s])
    return tuple(tuple(p) for p in parts)


def is_insertion_closed(d) -> ClosureReport:
    cex = _violation_triple(_prepare(d), insertion=True)
    return ClosureReport(Property.INSERTION, cex is None, cex)


def is_deletion_closed(d) -> ClosureReport:
    cex = _violation_triple(_prepare(d), insertion=False)
    return ClosureReport(Property.DELETION, cex is None, cex)


def identity_language_check(d) -> ClosureReport:
    """Whether L is the identity class of its syntactic monoid.

    ``details`` carries the separate closure verdicts and the direct
    comparison with the syntactic identity preimage.
    """
    ins = is_insertion_closed(d)
    dele = is_deletion_closed(d)
    m = minimize(d)
    nonempty = bool(m.terminals)
    sm = syntactic_monoid(m)
    preimage_ok, _ = dfa_equivalent(m, sm.identity_preimage())
    holds = ins.holds and dele.holds and nonempty
    cex = ins.counterexample or dele.counterexample
    details = {
        "insertion": ins.holds,
        "deletion": dele.holds,
        "nonempty": nonempty,
        "preimage_agrees": preimage_ok,
        "syntactic_order": len(sm),
    }
    return ClosureReport(Property.IDENTITY_LANGUAGE, holds, cex, details)


def reconstruct_monoid(d, alphabet: Optional[Alphabet] = None):
    """Finite monoid and generators whose loop problem is ``L(d)``.

    Positive words ``u`` and ``v`` are identified when ``u v'`` lies in L.
    Raises :class:`NotALoopProblem` when the identification is inconsistent
    or the rebuilt monoid has a different loop problem.
    """
    from .loopcore import loop_problem_dfa

    m = minimize(d)
    if not all(isinstance(s, SignedLetter) for s in m.alphabet):
        raise NotALoopProblem("language is not over an involutive alphabet")
    bases = sorted({s.base for s in m.alphabet})
    if alphabet is None:
        alphabet = Alphabet(tuple(f"x{b}" for b in bases))
    hat = alphabet.hat()
    if set(m.alphabet) != set(hat):
        raise NotALoopProblem("language is not over an involutive alphabet")
    if m.start not in m.terminals:
        raise NotALoopProblem("the empty word is not in the language")
    letters = alphabet.positive()
    bound = m.n_states
    reps = [()]
    right = []

    def classify(u):
        for idx, v in enumerate(reps):
            if m.accepts(u + involute(v)):
                return idx
        return None

    i = 0
    while i < len(reps):
        row = []
        for x in letters:
            u = reps[i] + (x,)
            c = classify(u)
            if c is None:
                if not m.accepts(u + involute(u)):
                    raise NotALoopProblem(f"{alphabet.render(u)} does not return to the start")
                reps.append(u)
                if len(reps) > bound:
                    raise NotALoopProblem("more classes than minimal-automaton states")
                c = len(reps) - 1
            row.append(c)
        right.append(row)
        i += 1

    n = len(reps)

    def act(a, word):
        for s in word:
            a = right[a][s.base]
        return a

    table = [[act(a, reps[b]) for b in range(n)] for a in range(n)]
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise NotALoopProblem("class of the empty word is not an identity")
        for b in range(n):
            if classify(reps[a] + reps[b]) != table[a][b]:
                raise NotALoopProblem("products are not well defined on classes")
    t = FiniteSemigroupTable(tuple(f"c{a}" for a in range(n)), table, 0)
    sigma = GeneratorMap(alphabet, tuple(right[0]), MONOID)
    ok, wit = dfa_equivalent(loop_problem_dfa(t, sigma), m)
    if not ok:
        raise NotALoopProblem(
            f"rebuilt monoid has a different loop problem (e.g. {alphabet.render(wit)})"
        )
    return t, sigma


__all__ = [
    "ClosureReport",
    "Property",
    "identity_language_check",
    "is_deletion_closed",
    "is_insertion_closed",
    "reconstruct_monoid",
]
