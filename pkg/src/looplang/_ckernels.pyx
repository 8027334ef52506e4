# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


def refine_partition(delta, accepting):
    cdef int[:, ::1] d = np.ascontiguousarray(delta, dtype=np.int32)
    cdef cnp.npy_bool[::1] acc = np.ascontiguousarray(accepting, dtype=np.bool_)
    cdef Py_ssize_t n = d.shape[0], k = d.shape[1]
    cdef int[::1] block = np.zeros(n, dtype=np.int32)
    cdef int[::1] prev = np.zeros(n, dtype=np.int32)
    cdef int[::1] key2 = np.zeros(n, dtype=np.int32)
    cdef int[::1] order = np.zeros(n, dtype=np.int32)
    cdef int[::1] tmp = np.zeros(n, dtype=np.int32)
    cdef int[::1] cnt = np.zeros(n + 1, dtype=np.int32)
    cdef int[::1] remap = np.zeros(n + 2, dtype=np.int32)
    cdef Py_ssize_t s, a, r
    cdef int count, new_count, nb, x, y, px, py
    if n == 0:
        return np.zeros(0, dtype=np.int32)
    for s in range(n):
        block[s] = 1 if acc[s] else 0
    count = _canonical(block, remap, n)
    while True:
        for s in range(n):
            prev[s] = block[s]
        nb = count
        for a in range(k):
            # refine block by prev[delta[s, a]] via two counting sorts
            for s in range(n):
                key2[s] = prev[d[s, a]]
            _counting_sort(key2, tmp, order, cnt, n, count, None)
            _counting_sort(block, order, tmp, cnt, n, nb, order)
            # tmp now ordered by (block, key2)
            x = -1
            y = -1
            r = -1
            for s in range(n):
                px = block[tmp[s]]
                py = key2[tmp[s]]
                if px != x or py != y:
                    r += 1
                    x = px
                    y = py
                order[tmp[s]] = r
            for s in range(n):
                block[s] = order[s]
            nb = r + 1
        new_count = _canonical(block, remap, n)
        if new_count == count:
            return np.asarray(block).copy()
        count = new_count


cdef int _canonical(int[::1] block, int[::1] remap, Py_ssize_t n):
    cdef Py_ssize_t s
    cdef int nxt = 0
    for s in range(n + 2):
        remap[s] = -1
    for s in range(n):
        if remap[block[s]] < 0:
            remap[block[s]] = nxt
            nxt += 1
        block[s] = remap[block[s]]
    return nxt


cdef void _counting_sort(int[::1] key, int[::1] src, int[::1] dst, int[::1] cnt,
                         Py_ssize_t n, int nkeys, object src_given):
    # stable sort of positions by key; src is identity when src_given is None
    cdef Py_ssize_t s, i
    cdef int c, total = 0
    for i in range(nkeys + 1):
        cnt[i] = 0
    for s in range(n):
        cnt[key[s]] += 1
    for i in range(nkeys):
        c = cnt[i]
        cnt[i] = total
        total += c
    if src_given is None:
        for s in range(n):
            dst[cnt[key[s]]] = s
            cnt[key[s]] += 1
    else:
        for i in range(n):
            s = src[i]
            dst[cnt[key[s]]] = s
            cnt[key[s]] += 1


def run_dfa_batch(delta, int start, accepting, words, lengths):
    cdef int[:, ::1] d = np.ascontiguousarray(delta, dtype=np.int32)
    cdef cnp.npy_bool[::1] acc = np.ascontiguousarray(accepting, dtype=np.bool_)
    cdef int[:, ::1] w = np.ascontiguousarray(words, dtype=np.int32)
    cdef int[::1] ln = np.ascontiguousarray(lengths, dtype=np.int32)
    cdef Py_ssize_t m = ln.shape[0], r, i
    out = np.zeros(m, dtype=np.bool_)
    cdef cnp.npy_bool[::1] o = out
    cdef int q
    for r in range(m):
        q = start
        for i in range(ln[r]):
            q = d[q, w[r, i]]
            if q < 0:
                break
        o[r] = q >= 0 and acc[q]
    return out


def language_layer(delta, int start, accepting, int k, int length):
    cdef int[:, ::1] d = np.ascontiguousarray(delta, dtype=np.int32)
    cdef cnp.npy_bool[::1] acc = np.ascontiguousarray(accepting, dtype=np.bool_)
    cdef Py_ssize_t total = 1, i, j, size = 1
    cdef int ell, a, q
    for ell in range(length):
        total *= k
    cur = np.full(total, -1, dtype=np.int32)
    cdef int[::1] c = cur
    c[0] = start
    for ell in range(length):
        # expand in place from the back so entries are not overwritten early
        for i in range(size - 1, -1, -1):
            q = c[i]
            for a in range(k - 1, -1, -1):
                j = i * k + a
                c[j] = d[q, a] if q >= 0 else -1
        size *= k
    out = np.zeros(total, dtype=np.bool_)
    cdef cnp.npy_bool[::1] o = out
    for i in range(total):
        o[i] = c[i] >= 0 and acc[c[i]]
    return out


def compose_relations(tuple a, tuple b):
    cdef Py_ssize_t n = len(a), p, q
    cdef unsigned long long row, acc
    cdef unsigned long long *bb
    if n > 64 or len(b) > 64:
        from ._pykernels import compose_relations as slow
        return slow(a, b)
    bb = <unsigned long long *> malloc(len(b) * sizeof(unsigned long long))
    try:
        for q in range(len(b)):
            bb[q] = b[q]
        out = []
        for p in range(n):
            row = a[p]
            acc = 0
            q = 0
            while row:
                if row & 1:
                    acc |= bb[q]
                row >>= 1
                q += 1
            out.append(acc)
        return tuple(out)
    finally:
        free(bb)
