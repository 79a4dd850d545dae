# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel.

Same enumeration as vcew._search_py (see that module for the algorithm
notes); both backends must return identical results so the deterministic
witness contract holds regardless of which one is installed.
"""

from libc.stdlib cimport free, malloc


cdef struct SState:
    int n
    int m
    int f
    int *eu
    int *ev
    int *fu
    int *fv
    int *sorder
    int *skey
    long long *colors
    long long *bounds
    int ptr
    int sconf
    int over
    long long nodes


cdef inline void _settle(SState *s, int p) noexcept nogil:
    cdef int j
    while s.ptr < s.m:
        j = s.sorder[s.ptr]
        if s.skey[j] > p:
            break
        if s.colors[s.eu[j]] == s.colors[s.ev[j]]:
            s.sconf += 1
        s.ptr += 1


cdef inline void _unsettle(SState *s, int old) noexcept nogil:
    cdef int j
    while s.ptr > old:
        s.ptr -= 1
        j = s.sorder[s.ptr]
        if s.colors[s.eu[j]] == s.colors[s.ev[j]]:
            s.sconf -= 1


cdef inline void _bump_up(SState *s, int v) noexcept nogil:
    if s.colors[v] == s.bounds[v]:
        s.over += 1
    s.colors[v] += 1


cdef inline void _bump_down(SState *s, int v) noexcept nogil:
    s.colors[v] -= 1
    if s.colors[v] == s.bounds[v]:
        s.over -= 1


cdef int _dfs_combo(SState *s, int start, int remaining, int *chosen, int depth) noexcept nogil:
    cdef int p, q, j, old
    s.nodes += 1
    if s.sconf or s.over:
        return 0
    if remaining == 0:
        q = s.ptr
        while q < s.m:
            j = s.sorder[q]
            if s.colors[s.eu[j]] == s.colors[s.ev[j]]:
                return 0
            q += 1
        return 1
    for p in range(start, s.f - remaining + 1):
        _bump_up(s, s.fu[p])
        _bump_up(s, s.fv[p])
        old = s.ptr
        _settle(s, p)
        chosen[depth] = p
        if _dfs_combo(s, p + 1, remaining - 1, chosen, depth + 1):
            return 1
        _unsettle(s, old)
        _bump_down(s, s.fv[p])
        _bump_down(s, s.fu[p])
    return 0


cdef long long _walk(SState *s, int d, int early) noexcept nogil:
    cdef long long total
    cdef int old
    s.nodes += 1
    if s.sconf or s.over:
        return 0
    if d == s.f:
        return 1
    old = s.ptr
    _settle(s, d)
    total = _walk(s, d + 1, early)
    _unsettle(s, old)
    if early and total:
        return total
    _bump_up(s, s.fu[d])
    _bump_up(s, s.fv[d])
    old = s.ptr
    _settle(s, d)
    total += _walk(s, d + 1, early)
    _unsettle(s, old)
    _bump_down(s, s.fv[d])
    _bump_down(s, s.fu[d])
    return total


cdef int *_copy_ints(object values, int count) except NULL:
    cdef int *out = <int *> malloc(count * sizeof(int) if count else sizeof(int))
    cdef int i
    if out == NULL:
        raise MemoryError()
    for i in range(count):
        out[i] = values[i]
    return out


cdef long long *_copy_longs(object values, int count) except NULL:
    cdef long long *out = <long long *> malloc(count * sizeof(long long) if count else sizeof(long long))
    cdef int i
    if out == NULL:
        raise MemoryError()
    for i in range(count):
        out[i] = values[i]
    return out


cdef void _release(SState *s) noexcept:
    free(s.eu)
    free(s.ev)
    free(s.fu)
    free(s.fv)
    free(s.sorder)
    free(s.skey)
    free(s.colors)
    free(s.bounds)


cdef int _init_state(SState *s, n, m, eu, ev, fu, fv, sorder, skey, colors0, bounds) except -1:
    cdef int v
    s.n = n
    s.m = m
    s.f = len(fu)
    s.eu = _copy_ints(eu, s.m)
    s.ev = _copy_ints(ev, s.m)
    s.fu = _copy_ints(fu, s.f)
    s.fv = _copy_ints(fv, s.f)
    s.sorder = _copy_ints(sorder, s.m)
    s.skey = _copy_ints(skey, s.m)
    s.colors = _copy_longs(colors0, s.n)
    s.bounds = _copy_longs(bounds, s.n)
    s.ptr = 0
    s.sconf = 0
    s.over = 0
    s.nodes = 0
    for v in range(s.n):
        if s.colors[v] > s.bounds[v]:
            s.over += 1
    _settle(s, -1)
    return 0


def solve_ones(n, m, eu, ev, fu, fv, sorder, skey, colors0, bounds, maxc):
    cdef SState s
    cdef int c, top, i, found
    cdef int *chosen = NULL
    _init_state(&s, n, m, eu, ev, fu, fv, sorder, skey, colors0, bounds)
    try:
        chosen = <int *> malloc((s.f + 1) * sizeof(int))
        if chosen == NULL:
            raise MemoryError()
        top = min(maxc, s.f)
        for c in range(top + 1):
            found = _dfs_combo(&s, 0, c, chosen, 0)
            if found:
                return [chosen[i] for i in range(c)], s.nodes
        return None, s.nodes
    finally:
        free(chosen)
        _release(&s)


def count_all(n, m, eu, ev, fu, fv, sorder, skey, colors0, bounds):
    cdef SState s
    cdef long long count
    _init_state(&s, n, m, eu, ev, fu, fv, sorder, skey, colors0, bounds)
    try:
        count = _walk(&s, 0, 0)
        return count, s.nodes
    finally:
        _release(&s)


def exists_proper(n, m, eu, ev, fu, fv, sorder, skey, colors0, bounds):
    cdef SState s
    cdef long long count
    _init_state(&s, n, m, eu, ev, fu, fv, sorder, skey, colors0, bounds)
    try:
        count = _walk(&s, 0, 1)
        return count > 0, s.nodes
    finally:
        _release(&s)
