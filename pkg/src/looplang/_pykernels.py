"""Pure-Python kernels; same contracts as the compiled ``_ckernels``."""

import numpy as np


def refine_partition(delta, accepting):
    """Coarsest partition of a complete DFA's states compatible with
    acceptance and transitions (Moore refinement).

    ``delta`` is an ``(n, k)`` integer array, ``accepting`` a length-``n``
    boolean array.  Block ids are numbered by first occurrence in state order.
    """
    rows = np.asarray(delta).tolist()
    acc = np.asarray(accepting).tolist()
    n = len(rows)
    block = _first_occurrence(acc)
    count = len(set(block))
    while True:
        sigs = [(block[s],) + tuple(block[t] for t in rows[s]) for s in range(n)]
        new = _first_occurrence(sigs)
        new_count = max(new, default=-1) + 1
        block = new
        if new_count == count:
            return np.array(block, dtype=np.int32)
        count = new_count


def _first_occurrence(keys):
    ids = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def run_dfa_batch(delta, start, accepting, words, lengths):
    """Acceptance of each row of ``words`` (padded, ``lengths`` gives the
    real length); missing transitions are ``-1``."""
    rows = np.asarray(delta).tolist()
    acc = np.asarray(accepting).tolist()
    out = np.zeros(len(lengths), dtype=bool)
    for r, (w, m) in enumerate(zip(np.asarray(words).tolist(), np.asarray(lengths).tolist())):
        q = start
        for a in w[:m]:
            q = rows[q][a]
            if q < 0:
                break
        out[r] = q >= 0 and acc[q]
    return out


def language_layer(delta, start, accepting, k, length):
    """Acceptance of every word of exactly ``length`` letters over
    ``range(k)``, indexed by the base-``k`` value of the word (first letter
    most significant)."""
    rows = np.asarray(delta).tolist()
    acc = np.asarray(accepting).tolist()
    states = [start]
    for _ in range(length):
        states = [rows[q][a] if q >= 0 else -1 for q in states for a in range(k)]
    return np.array([q >= 0 and acc[q] for q in states], dtype=bool)


def compose_relations(a, b):
    """Relational product of two relations given as tuples of row bitmasks."""
    out = []
    for row in a:
        acc = 0
        q = 0
        while row:
            if row & 1:
                acc |= b[q]
            row >>= 1
            q += 1
        out.append(acc)
    return tuple(out)
