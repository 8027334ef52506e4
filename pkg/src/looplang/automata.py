"""Finite automata: NFA/DFA construction, minimization, language operations,
transition and syntactic monoids.

Alphabet symbols are arbitrary hashable values (signed letters, ``"#"``,
plain strings); automata store edges by the symbol's index in their
``alphabet`` tuple.  Empty language convention: a one-state DFA with no
terminals and no edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from . import kernels
from .algebra import FiniteSemigroupTable
from .errors import AlphabetMismatch, SizeLimitExceeded

EPSILON = ()


def _bits(mask: int):
    q = 0
    while mask:
        if mask & 1:
            yield q
        mask >>= 1
        q += 1


@dataclass(frozen=True)
class Nfa:
    alphabet: tuple
    n_states: int
    edges: frozenset
    start: int
    terminals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        k = len(self.alphabet)
        for p, a, q in self.edges:
            if not (0 <= p < self.n_states and 0 <= q < self.n_states and 0 <= a < k):
                raise ValueError(f"edge {(p, a, q)} out of range")
        if not 0 <= self.start < self.n_states:
            raise ValueError("start state out of range")

    @cached_property
    def succ(self):
        """``succ[p][a]`` is the bitmask of ``a``-successors of ``p``."""
        out = [[0] * len(self.alphabet) for _ in range(self.n_states)]
        for p, a, q in self.edges:
            out[p][a] |= 1 << q
        return out

    @cached_property
    def pred(self):
        out = [[0] * len(self.alphabet) for _ in range(self.n_states)]
        for p, a, q in self.edges:
            out[q][a] |= 1 << p
        return out

    @cached_property
    def terminal_mask(self) -> int:
        return sum(1 << q for q in self.terminals)

    def symbol_index(self, symbol) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatch(f"symbol {symbol!r} is not in the alphabet") from None

    @cached_property
    def _index(self):
        return {s: i for i, s in enumerate(self.alphabet)}

    def step(self, mask: int, a: int) -> int:
        succ = self.succ
        out = 0
        for q in _bits(mask):
            out |= succ[q][a]
        return out

    def run(self, word, mask: Optional[int] = None) -> int:
        mask = (1 << self.start) if mask is None else mask
        for s in word:
            mask = self.step(mask, self.symbol_index(s))
            if not mask:
                break
        return mask

    def is_deterministic(self) -> bool:
        return all(bin(m).count("1") <= 1 for row in self.succ for m in row)

    def with_start(self, q: int) -> "Nfa":
        return Nfa(self.alphabet, self.n_states, self.edges, q, self.terminals)


@dataclass(frozen=True)
class Dfa:
    """Partial DFA; ``delta[q][a]`` is the successor or ``-1``."""

    alphabet: tuple
    delta: tuple
    start: int
    terminals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(int(x) for x in row) for row in self.delta))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        n = len(self.delta)
        for row in self.delta:
            if len(row) != len(self.alphabet) or any(not -1 <= x < n for x in row):
                raise ValueError("malformed transition row")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @cached_property
    def _index(self):
        return {s: i for i, s in enumerate(self.alphabet)}

    def symbol_index(self, symbol) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatch(f"symbol {symbol!r} is not in the alphabet") from None

    def run(self, word, q: Optional[int] = None) -> int:
        q = self.start if q is None else q
        for s in word:
            q = self.delta[q][self.symbol_index(s)]
            if q < 0:
                return -1
        return q

    def accepts(self, word) -> bool:
        return self.run(word) in self.terminals

    def is_complete(self) -> bool:
        return all(x >= 0 for row in self.delta for x in row)

    def to_nfa(self) -> Nfa:
        edges = {(p, a, q) for p, row in enumerate(self.delta) for a, q in enumerate(row) if q >= 0}
        return Nfa(self.alphabet, self.n_states, edges, self.start, self.terminals)

    def delta_array(self) -> np.ndarray:
        return np.array(self.delta, dtype=np.int32).reshape(self.n_states, len(self.alphabet))

    def accepting_array(self) -> np.ndarray:
        acc = np.zeros(self.n_states, dtype=bool)
        acc[list(self.terminals)] = True
        return acc


def empty_dfa(alphabet) -> Dfa:
    return Dfa(alphabet, [[-1] * len(alphabet)], 0, ())


# --- construction -------------------------------------------------------------


def normalize_labels(alphabet, n_states: int, edges, start: int, terminals) -> Nfa:
    """Nfa from an automaton whose edges carry words (tuples of symbols).

    Longer labels are subdivided through fresh states; empty labels are
    removed by epsilon-closure.
    """
    alphabet = tuple(alphabet)
    index = {s: i for i, s in enumerate(alphabet)}
    n = n_states
    letter_edges = set()
    eps = [set() for _ in range(n_states)]
    for p, word, q in edges:
        word = tuple(word)
        if not word:
            eps[p].add(q)
            continue
        try:
            idx = [index[s] for s in word]
        except KeyError as e:
            raise AlphabetMismatch(f"symbol {e.args[0]!r} is not in the alphabet") from None
        cur = p
        for a in idx[:-1]:
            eps.append(set())
            letter_edges.add((cur, a, n))
            cur = n
            n += 1
        letter_edges.add((cur, idx[-1], q))
    closure = []
    for p in range(n):
        seen = {p}
        stack = [p]
        while stack:
            r = stack.pop()
            for s in eps[r]:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        closure.append(seen)
    by_source = {}
    for p, a, q in letter_edges:
        by_source.setdefault(p, []).append((a, q))
    new_edges = set()
    for p in range(n):
        for r in closure[p]:
            for a, q in by_source.get(r, ()):
                new_edges.add((p, a, q))
    terminals = set(terminals)
    new_terms = {p for p in range(n) if closure[p] & terminals}
    return Nfa(alphabet, n, new_edges, start, new_terms)


def _reachable(n: int, start: int, succ_lists) -> set:
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for q in succ_lists[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def trim(a):
    """Keep accessible and co-accessible states (start always kept).

    Accepts an Nfa or Dfa and returns the same kind.
    """
    nfa = a.to_nfa() if isinstance(a, Dfa) else a
    fwd = [[] for _ in range(nfa.n_states)]
    bwd = [[] for _ in range(nfa.n_states)]
    for p, x, q in nfa.edges:
        fwd[p].append(q)
        bwd[q].append(p)
    acc = _reachable(nfa.n_states, nfa.start, fwd)
    coacc = set()
    for t in nfa.terminals:
        coacc |= _reachable(nfa.n_states, t, bwd)
    keep = acc & coacc
    if nfa.start not in keep:
        out = Nfa(nfa.alphabet, 1, (), 0, ())
        return determinize(out) if isinstance(a, Dfa) else out
    order = sorted(keep)
    pos = {q: i for i, q in enumerate(order)}
    edges = {(pos[p], x, pos[q]) for p, x, q in nfa.edges if p in pos and q in pos}
    out = Nfa(nfa.alphabet, len(order), edges, pos[nfa.start],
              {pos[t] for t in nfa.terminals if t in pos})
    if isinstance(a, Dfa):
        return canonical(determinize(out))
    return out


def determinize(a) -> Dfa:
    """Subset construction over reachable non-empty subsets, BFS order."""
    if isinstance(a, Dfa):
        return a
    k = len(a.alphabet)
    succ = a.succ
    start = 1 << a.start
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        mask = order[i]
        i += 1
        row = []
        members = list(_bits(mask))
        for x in range(k):
            nxt = 0
            for q in members:
                nxt |= succ[q][x]
            if not nxt:
                row.append(-1)
                continue
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
    tmask = a.terminal_mask
    terms = {i for i, m in enumerate(order) if m & tmask}
    return Dfa(a.alphabet, delta, 0, terms)


def canonical(d: Dfa) -> Dfa:
    """Renumber states in BFS order from the start, dropping unreachable ones."""
    pos = {d.start: 0}
    order = [d.start]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for r in d.delta[q]:
            if r >= 0 and r not in pos:
                pos[r] = len(order)
                order.append(r)
    delta = [[pos[r] if r >= 0 else -1 for r in d.delta[q]] for q in order]
    return Dfa(d.alphabet, delta, 0, {pos[q] for q in d.terminals if q in pos})


def complete(d: Dfa) -> Dfa:
    if d.is_complete():
        return d
    sink = d.n_states
    delta = [[r if r >= 0 else sink for r in row] for row in d.delta]
    delta.append([sink] * len(d.alphabet))
    return Dfa(d.alphabet, delta, d.start, d.terminals)


def minimize(d) -> Dfa:
    """Minimal trim DFA, canonically numbered."""
    d = canonical(determinize(d))
    if not d.terminals:
        return empty_dfa(d.alphabet)
    c = complete(d)
    blocks = kernels.refine_partition(c.delta_array(), c.accepting_array()).tolist()
    nb = max(blocks) + 1
    delta = [None] * nb
    for q, b in enumerate(blocks):
        if delta[b] is None:
            delta[b] = [blocks[r] for r in c.delta[q]]
    terms = {blocks[q] for q in c.terminals}
    # the dead class (if any) is the unique block that cannot reach a terminal
    live = set(terms)
    changed = True
    while changed:
        changed = False
        for b in range(nb):
            if b not in live and any(r in live for r in delta[b]):
                live.add(b)
                changed = True
    delta = [[r if r in live else -1 for r in row] if b in live else [-1] * len(row)
             for b, row in enumerate(delta)]
    return canonical(Dfa(d.alphabet, delta, blocks[c.start], terms))


def _aligned(d1: Dfa, d2: Dfa):
    if d1.alphabet == d2.alphabet:
        return d1, d2
    if set(d1.alphabet) != set(d2.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {d1.alphabet} vs {d2.alphabet}")
    return d1, reorder_alphabet(d2, d1.alphabet)


def reorder_alphabet(d: Dfa, alphabet) -> Dfa:
    idx = [d.alphabet.index(s) for s in alphabet]
    return Dfa(alphabet, [[row[i] for i in idx] for row in d.delta], d.start, d.terminals)


def extend_alphabet(d: Dfa, alphabet) -> Dfa:
    """Same language over a larger alphabet (new symbols have no edges)."""
    alphabet = tuple(alphabet)
    missing = set(d.alphabet) - set(alphabet)
    if missing:
        raise AlphabetMismatch(f"target alphabet lacks {sorted(map(repr, missing))}")
    idx = {s: i for i, s in enumerate(d.alphabet)}
    delta = [[row[idx[s]] if s in idx else -1 for s in alphabet] for row in d.delta]
    return Dfa(alphabet, delta, d.start, d.terminals)


def _product(d1: Dfa, d2: Dfa, accept) -> Dfa:
    d1, d2 = _aligned(d1, d2)
    c1, c2 = complete(d1), complete(d2)
    k = len(c1.alphabet)
    start = (c1.start, c2.start)
    pos = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        row = []
        for x in range(k):
            nxt = (c1.delta[p][x], c2.delta[q][x])
            if nxt not in pos:
                pos[nxt] = len(order)
                order.append(nxt)
            row.append(pos[nxt])
        delta.append(row)
    terms = {i for i, (p, q) in enumerate(order)
             if accept(p in c1.terminals, q in c2.terminals)}
    return Dfa(c1.alphabet, delta, 0, terms)


def dfa_equivalent(d1, d2):
    """``(equal, witness)``; the witness is the shortlex-least word in the
    symmetric difference, or ``None``."""
    d1, d2 = _aligned(determinize(d1), determinize(d2))
    c1, c2 = complete(d1), complete(d2)
    start = (c1.start, c2.start)
    parent = {start: None}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in c1.terminals) != (q in c2.terminals):
            word = []
            node = (p, q)
            while parent[node] is not None:
                node, x = parent[node]
                word.append(c1.alphabet[x])
            return False, tuple(reversed(word))
        for x in range(len(c1.alphabet)):
            nxt = (c1.delta[p][x], c2.delta[q][x])
            if nxt not in parent:
                parent[nxt] = ((p, q), x)
                queue.append(nxt)
    return True, None


def membership(a, w) -> bool:
    if isinstance(a, Dfa):
        return a.accepts(w)
    return bool(a.run(w) & a.terminal_mask)


def cone(a, q: int) -> Dfa:
    if isinstance(a, Dfa):
        a = a.to_nfa()
    return minimize(a.with_start(q))


# --- boolean and rational operations ----------------------------------------


def intersect(d1, d2) -> Dfa:
    return minimize(_product(determinize(d1), determinize(d2), lambda a, b: a and b))


def union(d1, d2) -> Dfa:
    return minimize(_product(determinize(d1), determinize(d2), lambda a, b: a or b))


def difference(d1, d2) -> Dfa:
    return minimize(_product(determinize(d1), determinize(d2), lambda a, b: a and not b))


def complement(d) -> Dfa:
    c = complete(determinize(d))
    return minimize(Dfa(c.alphabet, c.delta, c.start, set(range(c.n_states)) - c.terminals))


def _as_word_edges(a):
    nfa = a.to_nfa() if isinstance(a, Dfa) else a
    return [(p, (nfa.alphabet[x],), q) for p, x, q in nfa.edges], nfa


def concat(d1, d2) -> Dfa:
    if isinstance(d1, Dfa) and isinstance(d2, Dfa):
        d1, d2 = _aligned(d1, d2)
    e1, n1 = _as_word_edges(d1)
    e2, n2 = _as_word_edges(d2)
    if set(n1.alphabet) != set(n2.alphabet):
        raise AlphabetMismatch("concat needs equal alphabets")
    off = n1.n_states
    edges = e1 + [(p + off, w, q + off) for p, w, q in e2]
    edges += [(t, EPSILON, n2.start + off) for t in n1.terminals]
    nfa = normalize_labels(n1.alphabet, off + n2.n_states, edges, n1.start,
                           {t + off for t in n2.terminals})
    return minimize(nfa)


def kleene_star(d) -> Dfa:
    """Submonoid generated by the language."""
    edges, nfa = _as_word_edges(d)
    s = nfa.n_states
    edges.append((s, EPSILON, nfa.start))
    edges += [(t, EPSILON, s) for t in nfa.terminals]
    return minimize(normalize_labels(nfa.alphabet, s + 1, edges, s, {s}))


def left_quotient(d, w) -> Dfa:
    """``{x : w x in L}``."""
    d = determinize(d)
    q = d.run(w)
    if q < 0:
        return empty_dfa(d.alphabet)
    return minimize(Dfa(d.alphabet, d.delta, q, d.terminals))


def right_quotient(d, w) -> Dfa:
    """``{x : x w in L}``."""
    d = determinize(d)
    terms = {q for q in range(d.n_states) if d.run(w, q) in d.terminals}
    return minimize(Dfa(d.alphabet, d.delta, d.start, terms))


def inverse_morphism_image(d, rho: dict, alphabet) -> Dfa:
    """``{v : v rho in L}`` for the morphism given letter-wise by ``rho``."""
    d = determinize(d)
    alphabet = tuple(alphabet)
    delta = [[d.run(rho[y], q) for y in alphabet] for q in range(d.n_states)]
    return minimize(Dfa(alphabet, delta, d.start, d.terminals))


def star_dfa(alphabet, symbols) -> Dfa:
    """DFA of ``symbols*`` over ``alphabet``."""
    symbols = set(symbols)
    return Dfa(alphabet, [[0 if s in symbols else -1 for s in alphabet]], 0, {0})


def blocks_dfa(alphabet, blocks) -> Dfa:
    """DFA of ``B_1* B_2* ... B_n*`` for symbol sets ``B_i`` (disjoint)."""
    alphabet = tuple(alphabet)
    n = len(blocks)
    delta = []
    for i in range(n):
        row = []
        for s in alphabet:
            nxt = -1
            for j in range(i, n):
                if s in blocks[j]:
                    nxt = j
                    break
            row.append(nxt)
        delta.append(row)
    return Dfa(alphabet, delta, 0, set(range(n)))


def word_set_dfa(alphabet, words) -> Dfa:
    """DFA accepting exactly the given finite set of words."""
    alphabet = tuple(alphabet)
    idx = {s: i for i, s in enumerate(alphabet)}
    delta = [[-1] * len(alphabet)]
    terms = set()
    for w in words:
        q = 0
        for s in w:
            a = idx[s]
            if delta[q][a] < 0:
                delta.append([-1] * len(alphabet))
                delta[q][a] = len(delta) - 1
            q = delta[q][a]
        terms.add(q)
    return minimize(Dfa(alphabet, delta, 0, terms))


# --- enumeration helpers --------------------------------------------------------


def language_layers(d, max_len: int) -> list:
    """``layers[n]`` is a boolean array over all words of length ``n``,
    indexed by base-``k`` value with the first letter most significant."""
    d = determinize(d)
    delta = d.delta_array()
    acc = d.accepting_array()
    k = len(d.alphabet)
    return [kernels.language_layer(delta, d.start, acc, k, n) for n in range(max_len + 1)]


def accepted_words(d, max_len: int) -> set:
    d = determinize(d)
    k = len(d.alphabet)
    out = set()
    for n, layer in enumerate(language_layers(d, max_len)):
        for code in np.flatnonzero(layer).tolist():
            word = []
            for _ in range(n):
                code, r = divmod(code, k)
                word.append(d.alphabet[r])
            out.add(tuple(reversed(word)))
    return out


# --- transition and syntactic monoids -------------------------------------


class TransitionMonoid:
    """Monoid of relations ``sigma_w`` of an automaton.

    Elements are tuples of row bitmasks, numbered in BFS order from
    ``sigma_eps`` (element 0) with letters in alphabet order, so
    ``words[i]`` is the shortlex-least word realizing element ``i``.
    """

    def __init__(self, a):
        nfa = a.to_nfa() if isinstance(a, Dfa) else a
        self.automaton = nfa
        self.alphabet = nfa.alphabet
        n = nfa.n_states
        k = len(self.alphabet)
        gens = []
        for x in range(k):
            gens.append(tuple(nfa.succ[p][x] for p in range(n)))
        ident = tuple(1 << p for p in range(n))
        self.elements = [ident]
        self.words = [()]
        self.right = []
        index = {ident: 0}
        i = 0
        while i < len(self.elements):
            rel = self.elements[i]
            row = []
            for x in range(k):
                nxt = kernels.compose_relations(rel, gens[x])
                j = index.get(nxt)
                if j is None:
                    j = index[nxt] = len(self.elements)
                    self.elements.append(nxt)
                    self.words.append(self.words[i] + (self.alphabet[x],))
                row.append(j)
            self.right.append(row)
            i += 1
        self._index = index
        self.generators = {self.alphabet[x]: self.right[0][x] for x in range(k)}

    def __len__(self):
        return len(self.elements)

    identity = 0

    def act(self, m: int, word) -> int:
        for s in word:
            m = self.right[m][self.automaton.symbol_index(s)]
        return m

    def lookup(self, word) -> int:
        return self.act(0, word)

    def index_of(self, relation) -> Optional[int]:
        return self._index.get(tuple(relation))

    def product(self, a: int, b: int) -> int:
        return self.act(a, self.words[b])

    @cached_property
    def table(self) -> FiniteSemigroupTable:
        n = len(self)
        rows = [[self.product(a, b) for b in range(n)] for a in range(n)]
        return FiniteSemigroupTable(tuple(f"m{i}" for i in range(n)), rows, 0)

    def cayley_dfa(self, terminals=(0,)) -> Dfa:
        """DFA on the monoid elements reading letters by right action."""
        return Dfa(self.alphabet, self.right, 0, terminals)


def transition_monoid(a) -> TransitionMonoid:
    return TransitionMonoid(a)


@dataclass
class SyntacticMonoid:
    minimal: Dfa
    monoid: TransitionMonoid

    def lookup(self, word) -> int:
        return self.monoid.lookup(word)

    def identity_preimage(self) -> Dfa:
        """Words whose class is the identity."""
        return self.monoid.cayley_dfa((0,))

    def __len__(self):
        return len(self.monoid)


def syntactic_monoid(d) -> SyntacticMonoid:
    m = minimize(d)
    return SyntacticMonoid(m, TransitionMonoid(m))


# --- monoid isomorphism ----------------------------------------------------------


def _power_signature(t: FiniteSemigroupTable, a: int):
    seen = {}
    x = a
    k = 1
    while x not in seen:
        seen[x] = k
        x = t.table[x][a]
        k += 1
    return seen[x], k - seen[x], t.table[a][a] == a


def _generating_set(t: FiniteSemigroupTable) -> list:
    gens = []
    closed = frozenset()
    for a in range(len(t)):
        if a not in closed:
            gens.append(a)
            closed = t.closure(gens)
    return gens


def _extend(t1, t2, gens, images):
    """Extend a generator assignment to a morphism on the generated
    subsemigroup; ``None`` on conflict or non-injectivity."""
    phi = {}
    used = {}
    queue = deque()
    for g, h in zip(gens, images):
        if phi.get(g, h) != h:
            return None
        if g not in phi:
            if used.get(h, g) != g:
                return None
            phi[g] = h
            used[h] = g
            queue.append(g)
    while queue:
        a = queue.popleft()
        for g in gens:
            for c, img in ((t1.table[a][g], t2.table[phi[a]][phi[g]]),
                           (t1.table[g][a], t2.table[phi[g]][phi[a]])):
                if c in phi:
                    if phi[c] != img:
                        return None
                else:
                    if img in used:
                        return None
                    phi[c] = img
                    used[img] = c
                    queue.append(c)
    return phi


def _is_isomorphism(t1, t2, phi) -> bool:
    n = len(t1)
    if len(phi) != n or len(set(phi.values())) != n:
        return False
    return all(phi[t1.table[a][b]] == t2.table[phi[a]][phi[b]] for a in range(n) for b in range(n))


def monoid_iso_check(t1: FiniteSemigroupTable, t2: FiniteSemigroupTable, limit: int = 64):
    """An isomorphism ``{a: phi(a)}`` from ``t1`` to ``t2``, or ``None``."""
    if max(len(t1), len(t2)) > limit:
        raise SizeLimitExceeded(f"isomorphism search limited to {limit} elements")
    if len(t1) != len(t2):
        return None
    sig1 = [_power_signature(t1, a) for a in range(len(t1))]
    sig2 = [_power_signature(t2, a) for a in range(len(t2))]
    if sorted(sig1) != sorted(sig2):
        return None
    gens = _generating_set(t1)
    candidates = [[b for b in range(len(t2)) if sig2[b] == sig1[g]] for g in gens]

    def search(i, images):
        if _extend(t1, t2, gens[:i], images) is None:
            return None
        if i == len(gens):
            phi = _extend(t1, t2, gens, images)
            return phi if _is_isomorphism(t1, t2, phi) else None
        for b in candidates[i]:
            if b in images:
                continue
            found = search(i + 1, images + [b])
            if found is not None:
                return found
        return None

    return search(0, [])


def morphism_from_generators(t1, images1, t2, images2):
    """The isomorphism sending ``images1[x]`` to ``images2[x]`` for every
    letter ``x``, or ``None`` if that assignment is not one."""
    gens = list(images1)
    phi = _extend(t1, t2, gens, list(images2))
    if phi is None:
        return None
    if t1.identity is not None and t1.identity not in phi:
        if t2.identity is None:
            return None
        phi[t1.identity] = t2.identity
    return phi if _is_isomorphism(t1, t2, phi) else None
