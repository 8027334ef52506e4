"""Finite transducers, rational images of regular languages, the transducer
for completely simple semigroups and the multiplication-table pipeline."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    MONOID,
    SEMIGROUP,
    FiniteSemigroupTable,
    GeneratorMap,
    ReesSpec,
    group_inverse,
    rees_maximal_subgroup,
    rees_to_table,
    shortlex_representatives,
)
from .automata import (
    Dfa,
    Nfa,
    dfa_equivalent,
    extend_alphabet,
    intersect,
    kleene_star,
    minimize,
    normalize_labels,
    star_dfa,
    trim,
)
from .errors import AlphabetMismatch, PreconditionViolated
from .loopcore import loop_automaton, loop_problem_dfa
from .words import Alphabet

MARK = "#"


@dataclass(frozen=True)
class Transducer:
    """Edges are ``(p, input_word, output_word, q)`` with words as tuples
    of symbols from the respective alphabets."""

    in_alphabet: tuple
    out_alphabet: tuple
    n_states: int
    edges: tuple
    start: int
    terminals: frozenset
    state_names: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "in_alphabet", tuple(self.in_alphabet))
        object.__setattr__(self, "out_alphabet", tuple(self.out_alphabet))
        object.__setattr__(
            self, "edges", tuple((p, tuple(u), tuple(v), q) for p, u, v, q in self.edges)
        )
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        ins, outs = set(self.in_alphabet), set(self.out_alphabet)
        for p, u, v, q in self.edges:
            if not (0 <= p < self.n_states and 0 <= q < self.n_states):
                raise ValueError(f"edge {(p, q)} out of range")
            if not set(u) <= ins or not set(v) <= outs:
                raise AlphabetMismatch(f"edge label {(u, v)} leaves the alphabets")

    def name(self, q: int) -> str:
        return self.state_names[q] if self.state_names else str(q)


def transducer_inverse(t: Transducer) -> Transducer:
    return Transducer(
        t.out_alphabet,
        t.in_alphabet,
        t.n_states,
        tuple((p, v, u, q) for p, u, v, q in t.edges),
        t.start,
        t.terminals,
        t.state_names,
    )


def _subdivide(t: Transducer):
    """Letter-by-letter steps ``(p, a|None, b|None, q)`` through fresh states."""
    n = t.n_states
    steps = []
    for p, u, v, q in t.edges:
        length = max(len(u), len(v), 1)
        cur = p
        for i in range(length):
            a = u[i] if i < len(u) else None
            b = v[i] if i < len(v) else None
            if i == length - 1:
                nxt = q
            else:
                nxt = n
                n += 1
            steps.append((cur, a, b, nxt))
            cur = nxt
    return n, steps


def transducer_image(t: Transducer, d) -> Nfa:
    """Trim NFA for ``{v : (u, v) accepted by t for some u in L(d)}``."""
    if not isinstance(d, Dfa):
        d = minimize(d)
    if set(d.alphabet) != set(t.in_alphabet):
        raise AlphabetMismatch("transducer input alphabet differs from the language's")
    dindex = {s: i for i, s in enumerate(d.alphabet)}
    _, steps = _subdivide(t)
    by_source = {}
    for p, a, b, q in steps:
        by_source.setdefault(p, []).append((a, b, q))
    start = (t.start, d.start)
    pos = {start: 0}
    queue = deque([start])
    edges = []
    while queue:
        s, q = queue.popleft()
        for a, b, s2 in by_source.get(s, ()):
            if a is None:
                q2 = q
            else:
                q2 = d.delta[q][dindex[a]]
                if q2 < 0:
                    continue
            target = (s2, q2)
            if target not in pos:
                pos[target] = len(pos)
                queue.append(target)
            edges.append((pos[(s, q)], () if b is None else (b,), pos[target]))
    terms = {i for (s, q), i in pos.items() if s in t.terminals and q in d.terminals}
    return trim(normalize_labels(t.out_alphabet, len(pos), edges, 0, terms))


# --- completely simple semigroups ----------------------------------------------


@dataclass(frozen=True)
class CsTransducerSpec:
    """Data for the transducer of ``S = M(G; I, J; P)``.

    ``sigma_g`` generates the group as a monoid; ``tau`` assigns each
    letter of ``Y`` an element index of ``rees_to_table(rees)``.
    """

    rees: ReesSpec
    sigma_g: GeneratorMap
    tau: GeneratorMap
    w: dict  # y letter -> word for g_y
    w_inv: dict  # y letter -> word for g_y^-1
    p_word: dict  # (j, i) -> word for P_ji
    p_inv_word: dict  # (j, i) -> word for P_ji^-1
    elements: tuple  # ReesElement per table index

    def check(self) -> bool:
        """Every chosen word evaluates to its declared group element."""
        g = self.rees.group

        def ev(word):
            acc = g.identity
            for s in word:
                acc = g.table[acc][self.sigma_g.image(s)]
            return acc

        for y in self.tau.alphabet.positive():
            e = self.elements[self.tau.image(y)]
            if ev(self.w[y]) != e.g or ev(self.w_inv[y]) != group_inverse(g, e.g):
                return False
        for (j, i), word in self.p_word.items():
            pji = self.rees.P[j][i]
            if ev(word) != pji or ev(self.p_inv_word[(j, i)]) != group_inverse(g, pji):
                return False
        return True


def cs_transducer_spec(rees: ReesSpec, sigma_g: GeneratorMap, tau: GeneratorMap) -> CsTransducerSpec:
    """Choose shortlex-least representative words over the group's Cayley graph."""
    g = rees.group
    sigma_g = sigma_g.with_mode(MONOID)
    reps = shortlex_representatives(g, sigma_g)
    if len(reps) != len(g):
        raise PreconditionViolated("sigma_g does not generate the group")
    _, elems = rees_to_table(rees)
    w, w_inv = {}, {}
    for y in tau.alphabet.positive():
        e = elems[tau.image(y)]
        w[y] = reps[e.g]
        w_inv[y] = reps[group_inverse(g, e.g)]
    p_word, p_inv_word = {}, {}
    for j in range(rees.J):
        for i in range(rees.I):
            p_word[(j, i)] = reps[rees.P[j][i]]
            p_inv_word[(j, i)] = reps[group_inverse(g, rees.P[j][i])]
    return CsTransducerSpec(rees, sigma_g, tau.with_mode(SEMIGROUP), w, w_inv,
                            p_word, p_inv_word, tuple(elems))


def cs_state(spec: CsTransducerSpec, i: int, j: int) -> int:
    return 1 + i * spec.rees.J + j


def cs_transducer(spec: CsTransducerSpec, variant: str = "tracked") -> Transducer:
    """Transducer from ``X`` to ``Y-hat`` whose image of the word problem of
    ``G`` is the set of non-returning loops of ``S``.

    State ``(i, j)`` records the row and column of the current element.
    With ``variant="tracked"`` the ``k -> j_y`` edges exist for every row;
    ``variant="row-of-y"`` draws them only from row ``i_y``, which misses
    loops that multiply by generators from different rows.
    """
    if variant not in ("tracked", "row-of-y"):
        raise ValueError(f"unknown variant {variant!r}")
    I, J = spec.rees.I, spec.rees.J
    A, Z = 0, 1 + I * J
    names = ["A"] + [f"({i + 1},{j + 1})" for i in range(I) for j in range(J)] + ["Z"]
    edges = []
    for y in spec.tau.alphabet.positive():
        e = spec.elements[spec.tau.image(y)]
        iy, jy = e.i, e.j
        ybar = y.inverse()
        edges.append((A, spec.w[y], (y,), cs_state(spec, iy, jy)))
        edges.append((cs_state(spec, iy, jy), spec.w_inv[y], (ybar,), Z))
        rows = range(I) if variant == "tracked" else (iy,)
        for i in rows:
            for k in range(J):
                src = cs_state(spec, i, k)
                dst = cs_state(spec, i, jy)
                edges.append((src, spec.p_word[(k, iy)] + spec.w[y], (y,), dst))
                edges.append((dst, spec.w_inv[y] + spec.p_inv_word[(k, iy)], (ybar,), src))
    return Transducer(
        spec.sigma_g.alphabet.positive(),
        spec.tau.alphabet.hat(),
        Z + 1,
        tuple(edges),
        A,
        {Z},
        tuple(names),
    )


def word_problem_dfa(g: FiniteSemigroupTable, sigma: GeneratorMap) -> Dfa:
    """Positive words over ``X`` evaluating to the identity."""
    letters = sigma.alphabet.positive()
    delta = [[g.table[a][sigma.image(x)] for x in letters] for a in range(len(g))]
    return minimize(Dfa(letters, delta, g.identity, {g.identity}))


@dataclass
class CsLoopResult:
    transducer: Transducer
    K: Dfa
    loop_dfa: Dfa


def cs_loop_problem(spec: CsTransducerSpec, variant: str = "tracked") -> CsLoopResult:
    t = cs_transducer(spec, variant)
    wp = word_problem_dfa(spec.rees.group, spec.sigma_g)
    K = minimize(transducer_image(t, wp))
    return CsLoopResult(t, K, minimize(kleene_star(K)))


def nonreturning_loops(t: FiniteSemigroupTable, sigma: GeneratorMap) -> Dfa:
    """Loops at the identity that do not pass through it in between."""
    la = loop_automaton(t, sigma)
    nfa = la.nfa
    e = la.identity
    z = nfa.n_states
    edges = {(p, a, z if q == e else q) for p, a, q in nfa.edges}
    return minimize(Nfa(nfa.alphabet, z + 1, edges, e, {z}))


@dataclass
class RestrictionReport:
    subgroup: tuple  # (i, j)
    holds: bool
    witness: Optional[tuple]


def cs_subgroup_restriction_check(rees: ReesSpec, tau: GeneratorMap, sub_letters) -> RestrictionReport:
    """Compare the loop problem of a maximal subgroup, generated by the
    letters ``sub_letters`` of ``tau``, with the loop problem of ``S``
    intersected with words over those letters."""
    table, elems = rees_to_table(rees)
    tau = tau.with_mode(SEMIGROUP)
    ys = tau.alphabet
    idx = [ys.index(n) if isinstance(n, str) else int(n) for n in sub_letters]
    if not idx:
        raise PreconditionViolated("need at least one subgroup generator")
    cells = {(elems[tau.assignment[k]].i, elems[tau.assignment[k]].j) for k in idx}
    if len(cells) != 1:
        raise PreconditionViolated("generators do not lie in one maximal subgroup")
    (i, j), = cells
    embed, _ = rees_maximal_subgroup(rees, i, j)
    members = sorted(elems.index(r) for r in embed.values())
    h = table.restrict(members)
    pos = {a: n for n, a in enumerate(members)}
    sub_alpha = Alphabet(tuple(ys.letters[k] for k in idx))
    sigma = GeneratorMap(sub_alpha, tuple(pos[tau.assignment[k]] for k in idx), SEMIGROUP)
    if len(h.closure(set(sigma.assignment))) != len(h):
        raise PreconditionViolated("the chosen letters do not generate the subgroup")
    l_g = loop_problem_dfa(h, sigma)
    # rename the subgroup's letters into Y-hat
    rename = {}
    for n, k in enumerate(idx):
        for bar in (False, True):
            rename[sub_alpha.hat()[2 * n + bar]] = ys.hat()[2 * k + bar]
    l_g_y = Dfa(tuple(rename[s] for s in l_g.alphabet), l_g.delta, l_g.start, l_g.terminals)
    hat = ys.hat()
    allowed = {hat[2 * k + b] for k in idx for b in (0, 1)}
    rhs = intersect(loop_problem_dfa(table, tau), star_dfa(hat, allowed))
    ok, wit = dfa_equivalent(extend_alphabet(l_g_y, hat), rhs)
    return RestrictionReport((i, j), ok, wit)


# --- multiplication table --------------------------------------------------------


def _marker_transducer(hat) -> Transducer:
    """Copies its input and inserts exactly two markers."""
    edges = []
    for phase in range(3):
        for s in hat:
            edges.append((phase, (s,), (s,), phase))
        if phase < 2:
            edges.append((phase, (), (MARK,), phase + 1))
    return Transducer(hat, tuple(hat) + (MARK,), 3, edges, 0, {2})


def multiplication_table_language(t: FiniteSemigroupTable, sigma: GeneratorMap,
                                  raw: bool = False) -> Dfa:
    """Language ``u#v#z`` over ``X + {#}`` with ``(uv) = reverse(z)`` in ``t``.

    By default the blocks range over non-empty words; ``raw=True`` returns
    the unrestricted pipeline output, whose empty blocks refer to the
    adjoined identity.
    """
    sigma = sigma.with_mode(SEMIGROUP)
    hat = sigma.alphabet.hat()
    loop = loop_problem_dfa(t, sigma)
    k1 = transducer_image(_marker_transducer(hat), loop)
    k2 = intersect(minimize(k1), _table_shape(tuple(hat) + (MARK,)))
    positive = sigma.alphabet.positive()
    out = positive + (MARK,)
    index = {s: n for n, s in enumerate(out)}
    relabel = [index[MARK if s == MARK else s._replace(bar=False)] for s in k2.alphabet]
    edges = {(p, relabel[a], q) for p, row in enumerate(k2.delta) for a, q in enumerate(row) if q >= 0}
    table = minimize(Nfa(out, k2.n_states, edges, k2.start, k2.terminals))
    if raw:
        return table
    plus = _nonempty_blocks(out, positive)
    return intersect(table, plus)


def _table_shape(alphabet) -> Dfa:
    """``X* # X* # X'*``."""
    delta = []
    for q in range(3):
        row = []
        for s in alphabet:
            if s == MARK:
                row.append(q + 1 if q < 2 else -1)
            elif s.bar:
                row.append(2 if q == 2 else -1)
            else:
                row.append(q if q < 2 else -1)
        delta.append(row)
    return Dfa(alphabet, delta, 0, {2})


def _nonempty_blocks(alphabet, letters) -> Dfa:
    """``X+ # X+ # X+``."""
    letters = set(letters)
    # states: 2*b = start of block b, 2*b+1 = inside block b
    delta = []
    for q in range(6):
        block, inside = divmod(q, 2)
        row = []
        for s in alphabet:
            if s in letters:
                row.append(2 * block + 1)
            elif s == MARK and inside and block < 2:
                row.append(2 * (block + 1))
            else:
                row.append(-1)
        delta.append(row)
    return Dfa(alphabet, delta, 0, {5})


def table_membership(d: Dfa, u, v, z) -> bool:
    return d.accepts(tuple(u) + (MARK,) + tuple(v) + (MARK,) + tuple(z))


__all__ = [
    "CsLoopResult",
    "CsTransducerSpec",
    "MARK",
    "RestrictionReport",
    "Transducer",
    "cs_loop_problem",
    "cs_state",
    "cs_subgroup_restriction_check",
    "cs_transducer",
    "cs_transducer_spec",
    "multiplication_table_language",
    "nonreturning_loops",
    "table_membership",
    "transducer_image",
    "transducer_inverse",
    "word_problem_dfa",
]
