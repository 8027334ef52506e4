"""Independent reference implementations used to cross-check the library.

Everything here works on raw multiplication tables (lists of rows) and raw
DFA transition rows; nothing calls the library's automata algorithms.
Words are tuples of ``(base, bar)`` pairs, compatible with ``SignedLetter``.
"""

from __future__ import annotations

from itertools import product

import numpy as np


# --- finite monoids -----------------------------------------------------------


def monoid_rows(item):
    """``(rows, identity, gens)`` of the monoid whose loop automaton is used:
    the table itself in monoid mode, with a fresh identity appended in
    semigroup mode."""
    rows = [list(r) for r in item.table.table]
    gens = list(item.sigma.assignment)
    if item.sigma.mode == "semigroup":
        n = len(rows)
        rows = [r + [i] for i, r in enumerate(rows)] + [list(range(n + 1))]
        return rows, n, gens
    return rows, item.table.identity, gens


def evaluate(rows, start, gens, word):
    """Product of generator images, left to right, starting at ``start``."""
    acc = start
    for base, bar in word:
        assert not bar
        acc = rows[acc][gens[base]]
    return acc


def step_table(rows, gens):
    """``table[mask][2x+bar]``: endpoint set after one letter from the states
    in ``mask``.  A barred letter walks an edge backwards."""
    n = len(rows)
    k = 2 * len(gens)
    single = [[0] * k for _ in range(n)]
    for a in range(n):
        for x, g in enumerate(gens):
            b = rows[a][g]
            single[a][2 * x] |= 1 << b
            single[b][2 * x + 1] |= 1 << a
    table = np.zeros((1 << n, k), dtype=np.int64)
    for mask in range(1, 1 << n):
        low = mask & -mask
        q = low.bit_length() - 1
        rest = mask ^ low
        for s in range(k):
            table[mask, s] = table[rest, s] | single[q][s]
    return table


def loop_layers(rows, e, gens, max_len):
    """Boolean arrays of loop membership for every word over X-hat of each
    length, indexed by base-2k value (first letter most significant, letter
    order a, a', b, b', ...)."""
    table = step_table(rows, gens)
    masks = np.array([1 << e], dtype=np.int64)
    out = [(masks >> e) & 1 == 1]
    for _ in range(max_len):
        masks = table[masks].reshape(-1)  # row-major: prefix-major, letter-minor
        out.append((masks >> e) & 1 == 1)
    return out


def loop_member(rows, e, gens, word):
    mask = 1 << e
    for base, bar in word:
        nxt = 0
        for a in range(len(rows)):
            if not mask >> a & 1:
                continue
            if not bar:
                nxt |= 1 << rows[a][gens[base]]
            else:
                for b in range(len(rows)):
                    if rows[b][gens[base]] == a:
                        nxt |= 1 << b
        mask = nxt
    return bool(mask >> e & 1)


# --- symbolic monoids ----------------------------------------------------------


def free_monoid_member(word) -> bool:
    """Stack simulation: a letter pushes, its bar pops a matching letter."""
    stack = []
    for base, bar in word:
        if not bar:
            stack.append(base)
        elif stack and stack[-1] == base:
            stack.pop()
        else:
            return False
    return not stack


def free_commutative_member(word, k: int) -> bool:
    """Counting: every counter stays non-negative and ends at zero."""
    counts = [0] * k
    for base, bar in word:
        counts[base] += -1 if bar else 1
        if counts[base] < 0:
            return False
    return not any(counts)


# --- closure properties by enumeration -------------------------------------------


def _complete(delta, terminals):
    n = len(delta)
    sink = n
    rows = [[q if q >= 0 else sink for q in row] for row in delta]
    k = len(rows[0]) if rows else 0
    rows.append([sink] * k)
    return rows, set(terminals)


def closure_violation(delta, start, terminals, max_total: int, insertion: bool):
    """Smallest total length ``|x|+|w|+|y| <= max_total`` of a violating
    triple, or ``None``.

    Insertion violation: ``xy`` and ``w`` in L but ``xwy`` not.
    Deletion violation: ``xwy`` and ``w`` in L but ``xy`` not.
    A triple's verdict depends only on the state reached by ``x`` and the
    state maps of ``w`` and ``y``, so each length class is enumerated once
    as a set of states or maps; this is exhaustive over all triples.
    """
    rows, F = _complete(delta, terminals)
    n = len(rows)
    k = len(rows[0])
    ident = tuple(range(n))
    maps = [{ident}]
    for _ in range(max_total):
        maps.append({tuple(rows[f[q]][a] for q in range(n)) for f in maps[-1] for a in range(k)})
    in_lang = [{f for f in layer if f[start] in F} for layer in maps]
    reach = [{f[start] for f in layer} for layer in maps]
    # separates[m]: pairs (p, r) such that some y of length m accepts from
    # the short-path state p but rejects from the long-path state r
    separates = []
    for layer in maps:
        pairs = set()
        for g in layer:
            acc = [g[q] in F for q in range(n)]
            for p in range(n):
                for r in range(n):
                    short_ok, long_ok = acc[p], acc[r]
                    if (short_ok and not long_ok) if insertion else (long_ok and not short_ok):
                        pairs.add((p, r))
        separates.append(pairs)
    for total in range(max_total + 1):
        for i in range(total + 1):
            for j in range(total - i + 1):
                sep = separates[total - i - j]
                if any((q, f[q]) in sep for q in reach[i] for f in in_lang[j]):
                    return total
    return None


def triple_violates(accepts, x, w, y, insertion: bool) -> bool:
    if not accepts(w):
        return False
    if insertion:
        return accepts(x + y) and not accepts(x + w + y)
    return accepts(x + w + y) and not accepts(x + y)


def raw_accepts(delta, start, terminals):
    def accepts(word):
        q = start
        for a in word:
            q = delta[q][a]
            if q < 0:
                return False
        return q in terminals

    return accepts


def all_words(k: int, max_len: int):
    for n in range(max_len + 1):
        yield from product(range(k), repeat=n)


# --- bounded contexts in the free monoid --------------------------------------------


def stack_step(stack, letter):
    """One step of the free-monoid stack machine; ``None`` is the dead state."""
    if stack is None:
        return None
    base, bar = letter
    if not bar:
        return stack + (base,)
    if stack and stack[-1] == base:
        return stack[:-1]
    return None


def stack_run(stack, word):
    for s in word:
        stack = stack_step(stack, s)
        if stack is None:
            return None
    return stack


def free_monoid_context_signatures(letters, words, bound):
    """For each word ``u``: which contexts ``(x, y)`` with ``|x|, |y| <= bound``
    make ``x u y`` a loop, as the tuple of accepted right contexts per group
    of left contexts.

    The machine is deterministic, so a left context matters only through the
    stack it leaves and a right context is accepted from a stack iff running
    it empties the stack; both sets are enumerated exhaustively per stack.
    """
    contexts = list(all_words(len(letters), bound))
    contexts = [tuple(letters[i] for i in c) for c in contexts]
    left = {}
    for x in contexts:
        left.setdefault(stack_run((), x), []).append(x)
    accepted_from = {}

    def right(stack):
        if len(stack) > bound:  # each letter pops at most once
            return frozenset()
        if stack not in accepted_from:
            accepted_from[stack] = frozenset(y for y in contexts if stack_run(stack, y) == ())
        return accepted_from[stack]

    # left groups partition the contexts, so comparing the per-group right
    # sets compares the full sets of (x, y) pairs
    groups = list(left)
    out = {}
    for u in words:
        sig = []
        for stack in groups:
            after = stack_run(stack, u) if stack is not None else None
            sig.append(frozenset() if after is None else right(after))
        out[u] = tuple(sig)
    return out
