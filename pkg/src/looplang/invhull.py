"""Right translations, inverse hulls and minimality of loop automata for
right cancellative monoids, including symbolic hulls of the free monoid and
of the natural numbers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    FiniteSemigroupTable,
    GeneratorMap,
    MonoidOracle,
    is_right_cancellative,
    shortlex_representatives,
)
from .automata import morphism_from_generators, syntactic_monoid, trim
from .errors import BallTooSmall, NotRightCancellative
from .loopcore import loop_automaton, loop_ball, loop_problem_dfa, monoid_view, simulate_keys
from .words import Alphabet, SignedLetter, involute, shortlex_words


@dataclass(frozen=True)
class PartialBijection:
    """Injective partial map on ``range(n)``; ``mapping[x] == -1`` means
    undefined.  Maps act on the right: ``x(fg) = (xf)g``."""

    mapping: tuple

    def __post_init__(self):
        image = [y for y in self.mapping if y >= 0]
        if len(set(image)) != len(image):
            raise ValueError("partial bijection must be injective")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def then(self, g: "PartialBijection") -> "PartialBijection":
        return PartialBijection(tuple(g.mapping[y] if y >= 0 else -1 for y in self.mapping))

    def inverse(self) -> "PartialBijection":
        out = [-1] * self.n
        for x, y in enumerate(self.mapping):
            if y >= 0:
                out[y] = x
        return PartialBijection(tuple(out))

    def is_idempotent(self) -> bool:
        return self.then(self) == self

    @classmethod
    def identity(cls, n: int) -> "PartialBijection":
        return cls(tuple(range(n)))


def right_translation(t: FiniteSemigroupTable, m: int) -> PartialBijection:
    if not is_right_cancellative(t):
        raise NotRightCancellative("right translations are injective only in right cancellative monoids")
    return PartialBijection(tuple(t.table[x][m] for x in range(len(t))))


@dataclass
class InverseHullTable:
    elements: list  # PartialBijection
    words: list  # shortlex word over X-hat per element
    generators: dict  # X-hat letter -> element index
    table: FiniteSemigroupTable
    inverse_axioms: bool
    idempotents_commute: bool


def inverse_hull_finite(t: FiniteSemigroupTable, sigma: GeneratorMap) -> InverseHullTable:
    """Inverse monoid of partial maps generated by the right translations of
    the generators and their inverses."""
    if t.identity is None:
        raise NotRightCancellative("inverse hulls are built for monoids")
    hat = sigma.alphabet.hat()
    gens = []
    for s in hat:
        rho = right_translation(t, sigma.image(s))
        gens.append(rho.inverse() if s.bar else rho)
    ident = PartialBijection.identity(len(t))
    elements, words = [ident], [()]
    index = {ident: 0}
    right = []
    i = 0
    while i < len(elements):
        row = []
        for s, g in zip(hat, gens):
            f = elements[i].then(g)
            j = index.get(f)
            if j is None:
                j = index[f] = len(elements)
                elements.append(f)
                words.append(words[i] + (s,))
            row.append(j)
        right.append(row)
        i += 1
    n = len(elements)
    table = [[index[elements[a].then(elements[b])] for b in range(n)] for a in range(n)]
    inverse_axioms = all(
        f.inverse() in index and f.then(f.inverse()).then(f) == f for f in elements
    )
    idem = [f for f in elements if f.is_idempotent()]
    commute = all(e.then(f) == f.then(e) for e in idem for f in idem)
    return InverseHullTable(
        elements,
        words,
        {s: right[0][k] for k, s in enumerate(hat)},
        FiniteSemigroupTable(tuple(f"h{k}" for k in range(n)), table, 0),
        inverse_axioms,
        commute,
    )


def describe_partial_map(f: PartialBijection, names) -> str:
    parts = [f"{names[x]}->{names[y]}" for x, y in enumerate(f.mapping) if y >= 0]
    return "{" + ", ".join(parts) + "}"


# --- symbolic hulls ----------------------------------------------------------------


@dataclass(frozen=True)
class PolycyclicElement:
    """The partial map ``t u -> t v`` on positive words, or zero."""

    u: tuple = ()
    v: tuple = ()
    zero: bool = False

    def then(self, other: "PolycyclicElement") -> "PolycyclicElement":
        if self.zero or other.zero:
            return ZERO
        v1, u2 = self.v, other.u
        if len(v1) >= len(u2) and v1[len(v1) - len(u2):] == u2:
            return PolycyclicElement(self.u, v1[: len(v1) - len(u2)] + other.v)
        if len(u2) > len(v1) and u2[len(u2) - len(v1):] == v1:
            return PolycyclicElement(u2[: len(u2) - len(v1)] + self.u, other.v)
        return ZERO

    def render(self, alphabet: Alphabet) -> str:
        if self.zero:
            return "0"
        return f"({alphabet.render(self.u)}|{alphabet.render(self.v)})"


ZERO = PolycyclicElement(zero=True)
ONE = PolycyclicElement()


def polycyclic_generator(s: SignedLetter) -> PolycyclicElement:
    x = (SignedLetter(s.base),)
    return PolycyclicElement(x, ()) if s.bar else PolycyclicElement((), x)


def polycyclic_eval(alphabet: Alphabet, w) -> PolycyclicElement:
    acc = ONE
    for s in w:
        if not 0 <= s.base < len(alphabet):
            raise ValueError(f"letter {s} outside the alphabet")
        acc = acc.then(polycyclic_generator(s))
        if acc.zero:
            break
    return acc


def bicyclic_multiply(a, b):
    p1, q1 = a
    p2, q2 = b
    return p1 + max(0, p2 - q1), q2 + max(0, q1 - p2)


def bicyclic_eval(w) -> tuple:
    acc = (0, 0)
    for s in w:
        if s.base != 0:
            raise ValueError("bicyclic words use a single letter")
        acc = bicyclic_multiply(acc, (1, 0) if s.bar else (0, 1))
    return acc


# --- minimality -------------------------------------------------------------------


@dataclass
class MinimalityReport:
    deterministic: bool
    trim: bool
    separated_pairs: int
    total_pairs: int
    witnesses: dict = field(repr=False)  # vertex -> separating word

    @property
    def passed(self) -> bool:
        return self.deterministic and self.trim and self.separated_pairs == self.total_pairs


def _finite_minimality(t, sigma) -> MinimalityReport:
    m, tau = monoid_view(t, sigma)
    if not is_right_cancellative(m):
        raise NotRightCancellative("minimality needs a right cancellative monoid")
    la = loop_automaton(t, sigma)
    nfa = la.nfa
    reps = shortlex_representatives(m, tau)
    e = la.identity
    witnesses = {p: involute(reps[p]) for p in reps}
    separated = 0
    n = len(m)
    for p in range(n):
        for q in range(p + 1, n):
            wp = witnesses.get(p)
            if wp is None:
                continue
            in_p = bool(nfa.run(wp, 1 << p) & (1 << e))
            in_q = bool(nfa.run(wp, 1 << q) & (1 << e))
            if in_p and not in_q:
                separated += 1
    return MinimalityReport(
        nfa.is_deterministic(),
        trim(nfa).n_states == nfa.n_states,
        separated,
        n * (n - 1) // 2,
        witnesses,
    )


def _oracle_minimality(oracle: MonoidOracle, radius: int) -> MinimalityReport:
    if not oracle.right_cancellative:
        raise NotRightCancellative("oracle is not declared right cancellative")
    ball = loop_ball(oracle, radius)
    nfa = ball.nfa
    deterministic = nfa.is_deterministic() and all(
        len(oracle.right_divide(k, x)) <= 1
        for k in ball.keys
        for x in range(len(oracle.alphabet))
    )
    witnesses = {}
    for idx, word in enumerate(ball.words):
        w = involute(word)
        if not nfa.run(w, 1 << idx) & 1:
            raise BallTooSmall(f"return path of vertex {idx} leaves the ball")
        witnesses[idx] = w
    n = len(ball.keys)
    ident = oracle.identity_key
    separated = 0
    for p in range(n):
        for q in range(p + 1, n):
            if ident not in simulate_keys(oracle, [ball.keys[q]], witnesses[p]):
                separated += 1
    return MinimalityReport(deterministic, trim(nfa).n_states == n, separated,
                            n * (n - 1) // 2, witnesses)


def verify_minimality(source, sigma: Optional[GeneratorMap] = None,
                      radius: Optional[int] = None) -> MinimalityReport:
    """Determinism, trimness and pairwise separation of the loop automaton
    (a finite table), or of a ball in it (an oracle with ``radius``)."""
    if isinstance(source, MonoidOracle):
        if radius is None:
            raise ValueError("oracle minimality needs a radius")
        return _oracle_minimality(source, radius)
    return _finite_minimality(source, sigma)


@dataclass
class InverseHullReport:
    syntactic_order: int
    hull_order: int
    isomorphism: Optional[dict]
    actions_coincide: bool

    @property
    def holds(self) -> bool:
        return self.isomorphism is not None and self.actions_coincide


def verify_inverse_hull_theorem(t: FiniteSemigroupTable, sigma: GeneratorMap) -> InverseHullReport:
    """Compare the syntactic monoid of the loop problem with the inverse
    hull, generator by generator, and compare their actions on states."""
    if t.identity is None or not is_right_cancellative(t):
        raise NotRightCancellative("needs a right cancellative monoid")
    hull = inverse_hull_finite(t, sigma)
    d = loop_problem_dfa(t, sigma)
    sm = syntactic_monoid(d)
    hat = sigma.alphabet.hat()
    iso = morphism_from_generators(
        sm.monoid.table,
        [sm.monoid.generators[s] for s in hat],
        hull.table,
        [hull.generators[s] for s in hat],
    )
    # states of the minimal automaton correspond to elements via shortlex words
    reps = shortlex_representatives(t, sigma)
    state_of = {m: sm.minimal.run(w) for m, w in reps.items()}
    coincide = (
        len(reps) == len(t)
        and sm.minimal.n_states == len(t)
        and len(set(state_of.values())) == len(t)
        and -1 not in state_of.values()
    )
    if coincide:
        for m in range(len(t)):
            for k, s in enumerate(hat):
                rho = right_translation(t, sigma.image(s))
                f = rho.inverse() if s.bar else rho
                target = f(m)
                expect = state_of[target] if target >= 0 else -1
                if sm.minimal.delta[state_of[m]][k] != expect:
                    coincide = False
    return InverseHullReport(len(sm), len(hull.elements), iso, coincide)


# --- bounded syntactic equivalence -------------------------------------------------


@dataclass
class BoundedEquivalence:
    equivalent: bool
    bound: int
    context: Optional[tuple] = None  # (x, y) separating the two words


class ContextSignatures:
    """Bounded syntactic classes of the loop problem of an oracle.

    Words ``u`` and ``v`` are bounded-equivalent when ``x u y`` and
    ``x v y`` agree on membership for all contexts with ``|x|, |y| <= bound``.
    Left contexts are grouped by the key set they reach.  Right contexts
    are summarized by hash-consed residuals: two key sets get the same id at
    depth ``d`` exactly when they accept the same words of length ``<= d``.
    """

    def __init__(self, oracle: MonoidOracle, bound: int = 6):
        self.oracle = oracle
        self.bound = bound
        self.hat = oracle.alphabet.hat()
        self.ident = oracle.identity_key
        start = frozenset([self.ident])
        groups = {}
        for x in shortlex_words(self.hat, bound):
            groups.setdefault(simulate_keys(oracle, start, x), x)
        self.left = list(groups.items())  # (key set, first context)
        self._res = {}
        self._cons = {}
        self._nodes = []
        self._step = {}

    def _next(self, keys, s):
        k = (keys, s)
        got = self._step.get(k)
        if got is None:
            got = self._step[k] = simulate_keys(self.oracle, keys, (s,))
        return got

    def _intern(self, node) -> int:
        rid = self._cons.get(node)
        if rid is None:
            rid = self._cons[node] = len(self._nodes)
            self._nodes.append(node)
        return rid

    @property
    def empty(self) -> int:
        """Residual accepting nothing."""
        return self._intern(("empty",))

    def residual(self, keys: frozenset, depth: Optional[int] = None) -> int:
        depth = self.bound if depth is None else depth
        k = (keys, depth)
        got = self._res.get(k)
        if got is not None:
            return got
        dist = self.oracle.return_distance
        if not keys or all(dist(key) > depth for key in keys):
            rid = self.empty
        else:
            flag = self.ident in keys
            if depth == 0:
                kids = ()
            else:
                kids = tuple(self.residual(self._next(keys, s), depth - 1) for s in self.hat)
            if not flag and all(c == self.empty for c in kids):
                rid = self.empty
            else:
                rid = self._intern((flag,) + kids)
        self._res[k] = rid
        return rid

    def _children(self, rid: int) -> tuple:
        node = self._nodes[rid]
        if node == ("empty",) or len(node) == 1:
            return (self.empty,) * len(self.hat)
        return node[1:]

    def _separator(self, a: int, b: int) -> tuple:
        """Shortest word accepted from exactly one of two residuals."""
        queue = deque([(a, b, ())])
        while queue:
            a, b, y = queue.popleft()
            fa = self._nodes[a][0] is True
            fb = self._nodes[b][0] is True
            if fa != fb:
                return y
            for s, ca, cb in zip(self.hat, self._children(a), self._children(b)):
                if ca != cb:
                    queue.append((ca, cb, y + (s,)))
        raise AssertionError("residuals differ but no separator found")

    def _run(self, keys, w):
        for s in w:
            if not keys:
                break
            keys = self._next(keys, s)
        return keys

    def signature(self, u) -> tuple:
        return tuple(self.residual(self._run(ks, u)) for ks, _ in self.left)

    def compare(self, u, v) -> BoundedEquivalence:
        for ks, x in self.left:
            a = self.residual(self._run(ks, u))
            b = self.residual(self._run(ks, v))
            if a != b:
                return BoundedEquivalence(False, self.bound, (x, self._separator(a, b)))
        return BoundedEquivalence(True, self.bound)


def bounded_syntactic_equivalence(member, alphabet, u, v, bound: int = 6) -> BoundedEquivalence:
    """Bounded-context comparison of ``u`` and ``v``.

    ``member`` is either a :class:`MonoidOracle` (its loop problem is the
    language) or a membership predicate over words on ``alphabet``.
    """
    if isinstance(member, MonoidOracle):
        return ContextSignatures(member, bound).compare(u, v)
    contexts = list(shortlex_words(tuple(alphabet), bound))
    u, v = tuple(u), tuple(v)
    for x in contexts:
        for y in contexts:
            if member(x + u + y) != member(x + v + y):
                return BoundedEquivalence(False, bound, (x, y))
    return BoundedEquivalence(True, bound)


__all__ = [
    "BoundedEquivalence",
    "ContextSignatures",
    "InverseHullReport",
    "InverseHullTable",
    "MinimalityReport",
    "ONE",
    "PartialBijection",
    "PolycyclicElement",
    "ZERO",
    "bicyclic_eval",
    "bicyclic_multiply",
    "bounded_syntactic_equivalence",
    "describe_partial_map",
    "inverse_hull_finite",
    "polycyclic_eval",
    "polycyclic_generator",
    "right_translation",
    "verify_inverse_hull_theorem",
    "verify_minimality",
]
