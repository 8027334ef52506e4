"""Cayley graphs, loop automata and decision procedures for loop problems."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .algebra import (
    MONOID,
    SEMIGROUP,
    FiniteSemigroupTable,
    GeneratorMap,
    MonoidOracle,
    adjoin_identity,
    group_inverse,
    is_group,
    shortlex_representatives,
)
from .automata import (
    Dfa,
    Nfa,
    blocks_dfa,
    dfa_equivalent,
    intersect,
    inverse_morphism_image,
    left_quotient,
    minimize,
    right_quotient,
)
from .errors import (
    EmptyWordInSemigroupMode,
    NoIdentityWord,
    NotAGroup,
    NotAMonoid,
    NotEnoughElements,
    OracleLacksDivision,
    PreconditionViolated,
)
from .words import SignedLetter, involute, is_positive, zigzag_factor


def monoid_view(t: FiniteSemigroupTable, sigma: GeneratorMap):
    """The monoid whose loop automaton defines the loop problem: ``t`` itself
    in monoid mode, ``t`` with a fresh identity in semigroup mode."""
    if sigma.mode == SEMIGROUP:
        return adjoin_identity(t), sigma.with_mode(MONOID)
    if t.identity is None:
        raise NotAMonoid("monoid generators need a table with an identity")
    return t, sigma


@dataclass(frozen=True)
class CayleyGraph:
    vertices: tuple
    edges: tuple  # (a, letter index, b) with b = a * x


def cayley_graph(t: FiniteSemigroupTable, sigma: GeneratorMap) -> CayleyGraph:
    if t.identity is None:
        raise NotAMonoid("Cayley graphs are built on monoids; adjoin an identity first")
    edges = tuple(
        (a, x, t.table[a][sigma.assignment[x]])
        for a in range(len(t))
        for x in range(len(sigma.alphabet))
    )
    return CayleyGraph(t.names, edges)


@dataclass(frozen=True)
class LoopAutomaton:
    """Loop automaton over X-hat; ``table`` is the monoid actually used
    (S^1 for semigroup generators)."""

    table: FiniteSemigroupTable
    sigma: GeneratorMap
    nfa: Nfa

    @property
    def identity(self) -> int:
        return self.table.identity


@lru_cache(maxsize=256)
def loop_automaton(t: FiniteSemigroupTable, sigma: GeneratorMap) -> LoopAutomaton:
    m, tau = monoid_view(t, sigma)
    graph = cayley_graph(m, tau)
    edges = set()
    for a, x, b in graph.edges:
        edges.add((a, 2 * x, b))
        edges.add((b, 2 * x + 1, a))
    nfa = Nfa(tau.alphabet.hat(), len(m), edges, m.identity, {m.identity})
    return LoopAutomaton(m, tau, nfa)


@lru_cache(maxsize=256)
def loop_problem_dfa(t: FiniteSemigroupTable, sigma: GeneratorMap) -> Dfa:
    return minimize(loop_automaton(t, sigma).nfa)


# --- oracle-backed machinery ---------------------------------------------------


@dataclass
class Ball:
    """Elements within positive Cayley distance ``radius`` of the identity.

    Non-authoritative: membership questions go through oracle simulation.
    """

    keys: list
    words: list
    nfa: Nfa
    radius: int
    boundary: frozenset
    index: dict = field(repr=False)


def _bfs_keys(oracle: MonoidOracle, radius: Optional[int] = None, limit: Optional[int] = None):
    """Shortlex BFS over positive words; yields (key, word, distance)."""
    ident = oracle.identity_key
    seen = {ident}
    queue = deque([(ident, (), 0)])
    letters = oracle.alphabet.positive()
    count = 0
    while queue:
        key, word, dist = queue.popleft()
        yield key, word, dist
        count += 1
        if limit is not None and count >= limit:
            return
        if radius is not None and dist >= radius:
            continue
        for x in letters:
            nxt = oracle.act(key, x.base)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + (x,), dist + 1))


def loop_ball(oracle: MonoidOracle, radius: int) -> Ball:
    if radius < 0:
        raise ValueError("radius must be non-negative")
    keys, words, dists = [], [], []
    for key, word, dist in _bfs_keys(oracle, radius):
        keys.append(key)
        words.append(word)
        dists.append(dist)
    index = {k: i for i, k in enumerate(keys)}
    edges = set()
    for i, key in enumerate(keys):
        for x in range(len(oracle.alphabet)):
            j = index.get(oracle.act(key, x))
            if j is not None:
                edges.add((i, 2 * x, j))
                edges.add((j, 2 * x + 1, i))
    nfa = Nfa(oracle.alphabet.hat(), len(keys), edges, 0, {0})
    boundary = frozenset(k for k, d in zip(keys, dists) if d == radius)
    return Ball(keys, words, nfa, radius, boundary, index)


def simulate_keys(oracle: MonoidOracle, keys, w) -> frozenset:
    """Set of keys reachable from ``keys`` reading ``w`` in the (infinite)
    loop automaton."""
    cur = frozenset(keys)
    for s in w:
        if s.bar:
            if oracle.right_divide is None:
                raise OracleLacksDivision("reading a barred letter needs right division")
            nxt = set()
            for k in cur:
                nxt |= oracle.right_divide(k, s.base)
            cur = frozenset(nxt)
        else:
            cur = frozenset(oracle.act(k, s.base) for k in cur)
        if not cur:
            break
    return cur


def loop_membership(source, sigma: Optional[GeneratorMap], w) -> bool:
    """Whether ``w`` labels a loop at the identity.

    ``source`` is a finite table (with ``sigma``) or a :class:`MonoidOracle`
    (``sigma`` ignored).
    """
    if isinstance(source, MonoidOracle):
        return source.identity_key in simulate_keys(source, [source.identity_key], w)
    return loop_problem_dfa(source, sigma).accepts(w)


def words_equal(source, sigma: Optional[GeneratorMap], u, v) -> bool:
    """``u sigma == v sigma`` decided as ``u v' in L``."""
    if not (is_positive(u) and is_positive(v)):
        raise ValueError("words_equal compares positive words")
    if sigma is not None and sigma.mode == SEMIGROUP and (not u or not v):
        raise EmptyWordInSemigroupMode("semigroup words must be non-empty")
    return loop_membership(source, sigma, tuple(u) + involute(v))


# --- zig-zag ---------------------------------------------------------------------


@dataclass(frozen=True)
class ZigZagWitness:
    factorization: object
    points: tuple  # element indices p_0 .. p_n


def _eval_from(t, sigma, p, w):
    for s in w:
        p = t.table[p][sigma.assignment[s.base]]
    return p


def zigzag_check(t: FiniteSemigroupTable, sigma: GeneratorMap, x: int, y: int, w):
    """Witness ``p_0..p_n`` for a path ``x -> y`` labelled ``w`` in the loop
    automaton (element indices refer to the monoid of :func:`monoid_view`),
    or ``None`` when there is no such path."""
    la = loop_automaton(t, sigma)
    nfa = la.nfa
    w = tuple(w)
    layers = [{x: None}]
    for s in w:
        a = nfa.symbol_index(s)
        nxt = {}
        for p in layers[-1]:
            for q in _bits_list(nfa.succ[p][a]):
                nxt.setdefault(q, p)
        if not nxt:
            return None
        layers.append(nxt)
    if y not in layers[-1]:
        return None
    path = [y]
    for i in range(len(w), 0, -1):
        path.append(layers[i][path[-1]])
    path.reverse()
    f = zigzag_factor(w)
    cuts = [0]
    pos = 0
    for ui, vi in zip(f.u, f.v):
        pos += len(ui) + len(vi)
        cuts.append(pos)
    points = tuple(path[c] for c in cuts)
    m, tau = la.table, la.sigma
    for i in range(f.n):
        lhs = _eval_from(m, tau, points[i], f.u[i])
        rhs = _eval_from(m, tau, points[i + 1], f.v[i])
        if lhs != rhs:
            raise AssertionError("zig-zag equation failed on a genuine path")
    return ZigZagWitness(f, points)


def _bits_list(mask):
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return out


def validate_zigzag(t, sigma, x, y, witness: ZigZagWitness) -> bool:
    m, tau = monoid_view(t, sigma)
    f, p = witness.factorization, witness.points
    if p[0] != x or p[-1] != y or len(p) != f.n + 1:
        return False
    return all(
        _eval_from(m, tau, p[i], f.u[i]) == _eval_from(m, tau, p[i + 1], f.v[i])
        for i in range(f.n)
    )


# --- derived languages ---------------------------------------------------------


def meeting_problem(t: FiniteSemigroupTable, sigma: GeneratorMap) -> Dfa:
    """Loop problem intersected with ``X* X'*``."""
    hat = sigma.alphabet.hat()
    pos = {s for s in hat if not s.bar}
    neg = {s for s in hat if s.bar}
    return intersect(loop_problem_dfa(t, sigma), blocks_dfa(hat, [pos, neg]))


def loops_everywhere(t: FiniteSemigroupTable, sigma: GeneratorMap, w) -> bool:
    nfa = loop_automaton(t, sigma).nfa
    return all(nfa.run(w, 1 << p) & (1 << p) for p in range(nfa.n_states))


def _positive_ends_dfa(hat) -> Dfa:
    """``X X-hat* X' + {eps}``."""
    delta = []
    for q in range(3):
        row = []
        for s in hat:
            if q == 0:
                row.append(-1 if s.bar else 1)
            else:
                row.append(2 if s.bar else 1)
        delta.append(row)
    return Dfa(hat, delta, 0, {0, 2})


@dataclass
class SemigroupMonoidReport:
    identity_word: tuple
    intersection_holds: bool
    intersection_witness: Optional[tuple]
    quotient_holds: bool
    quotient_witness: Optional[tuple]

    @property
    def holds(self) -> bool:
        return self.intersection_holds and self.quotient_holds


def semigroup_monoid_relation_check(t: FiniteSemigroupTable, sigma_plus: GeneratorMap):
    """Compare the semigroup and monoid loop problems of a monoid.

    Checks ``L_sg = L_mon & (X X-hat* X' + eps)`` and
    ``L_mon = w^-1 L_sg w'^-1`` for the shortlex-least non-empty ``w``
    evaluating to the identity.
    """
    if t.identity is None:
        raise NotAMonoid("relation check needs a monoid")
    sg = sigma_plus.with_mode(SEMIGROUP)
    mon = sigma_plus.with_mode(MONOID)
    l_sg = loop_problem_dfa(t, sg)
    l_mon = loop_problem_dfa(t, mon)
    hat = sg.alphabet.hat()
    ok1, wit1 = dfa_equivalent(l_sg, intersect(l_mon, _positive_ends_dfa(hat)))
    reps = shortlex_representatives(t, sg)
    if t.identity not in reps:
        raise NoIdentityWord("the identity is not a non-empty product of generators")
    w = reps[t.identity]
    quotient = right_quotient(left_quotient(l_sg, w), involute(w))
    ok2, wit2 = dfa_equivalent(l_mon, quotient)
    return SemigroupMonoidReport(w, ok1, wit1, ok2, wit2)


@dataclass
class GeneratorChange:
    rho: dict  # Y-hat letter -> X-hat word
    holds: bool
    witness: Optional[tuple]


def generator_change(sigma: GeneratorMap, tau: GeneratorMap, t: FiniteSemigroupTable):
    """Morphism ``rho`` with ``L_tau = L_sigma rho^-1``, verified as DFAs."""
    if sigma.mode != tau.mode:
        raise PreconditionViolated("both generator maps need the same mode")
    if sigma.mode == MONOID and t.identity is None:
        raise NotAMonoid("monoid generators need a table with an identity")
    reps = shortlex_representatives(t, sigma)
    rho = {}
    for y in tau.alphabet.positive():
        target = tau.image(y)
        if target not in reps:
            raise PreconditionViolated(f"sigma does not reach {t.names[target]!r}")
        rho[y] = reps[target]
        rho[y.inverse()] = involute(reps[target])
    l_sigma = loop_problem_dfa(t, sigma)
    l_tau = loop_problem_dfa(t, tau)
    pre = inverse_morphism_image(l_sigma, rho, tau.alphabet.hat())
    ok, wit = dfa_equivalent(l_tau, pre)
    return GeneratorChange(rho, ok, wit)


@dataclass
class GroupWordProblem:
    tau: dict  # X-hat letter -> group element
    dfa: Dfa
    identical: bool


def group_loop_as_word_problem(g: FiniteSemigroupTable, sigma: GeneratorMap):
    """Loop problem of a group as the word problem over X-hat with bars
    sent to inverses; ``identical`` reports structural equality of the
    word-problem automaton and the loop automaton."""
    if not is_group(g):
        raise NotAGroup("not a group")
    sigma = sigma.with_mode(MONOID)
    tau = {}
    for x in sigma.alphabet.positive():
        tau[x] = sigma.image(x)
        tau[x.inverse()] = group_inverse(g, sigma.image(x))
    hat = sigma.alphabet.hat()
    delta = [[g.table[a][tau[s]] for s in hat] for a in range(len(g))]
    dfa = Dfa(hat, delta, g.identity, {g.identity})
    la = loop_automaton(g, sigma)
    identical = dfa.to_nfa() == la.nfa
    return GroupWordProblem(tau, dfa, identical)


@dataclass
class ConeWitness:
    words: list
    keys: list
    discriminators: list
    valid: bool


def distinct_cones_witness(oracle: MonoidOracle, n: int, max_radius: Optional[int] = None):
    """``n`` positive words with pairwise distinct cones in the loop problem.

    The discriminator for ``u_i`` is ``u_i'``: ``u_i u_i'`` is a loop while
    ``u_j u_i'`` is not for ``j != i``.
    """
    if oracle.right_divide is None:
        raise OracleLacksDivision("cone separation needs right division")
    words, keys = [], []
    for key, word, _ in _bfs_keys(oracle, max_radius, limit=n):
        words.append(word)
        keys.append(key)
    if len(words) < n:
        raise NotEnoughElements(f"only {len(words)} elements found")
    discs = [involute(u) for u in words]
    ident = oracle.identity_key
    valid = True
    for i, d in enumerate(discs):
        for j, u in enumerate(words):
            inside = ident in simulate_keys(oracle, [ident], u + d)
            if inside != (i == j):
                valid = False
    return ConeWitness(words, keys, discs, valid)


def hat_letters(sigma: GeneratorMap):
    return sigma.alphabet.hat()


__all__ = [
    "Ball",
    "CayleyGraph",
    "ConeWitness",
    "GeneratorChange",
    "GroupWordProblem",
    "LoopAutomaton",
    "SemigroupMonoidReport",
    "SignedLetter",
    "ZigZagWitness",
    "cayley_graph",
    "distinct_cones_witness",
    "generator_change",
    "group_loop_as_word_problem",
    "loop_automaton",
    "loop_ball",
    "loop_membership",
    "loop_problem_dfa",
    "loops_everywhere",
    "meeting_problem",
    "monoid_view",
    "semigroup_monoid_relation_check",
    "simulate_keys",
    "validate_zigzag",
    "words_equal",
    "zigzag_check",
]
