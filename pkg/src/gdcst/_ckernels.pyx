# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_kernels_py`` for the reference semantics.

Masks are ``uint64`` so callers must keep ``m <= 63``.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

MAX_EDGES = 63


cdef struct Problem:
    int n
    int m
    int *eu
    int *ev
    uint64_t *dep
    int *lo
    int *hi
    int64_t *w


cdef int _load(Problem *p, int n, eu, ev, dep_masks, lower, upper, weights) except -1:
    cdef int m = len(eu)
    cdef int e
    if m > MAX_EDGES:
        raise ValueError("compiled kernels handle at most 63 edges")
    p.n = n
    p.m = m
    p.eu = <int *> malloc((m + 1) * sizeof(int))
    p.ev = <int *> malloc((m + 1) * sizeof(int))
    p.dep = <uint64_t *> malloc((m + 1) * sizeof(uint64_t))
    p.lo = <int *> malloc((m + 1) * sizeof(int))
    p.hi = <int *> malloc((m + 1) * sizeof(int))
    p.w = <int64_t *> malloc((m + 1) * sizeof(int64_t))
    if not (p.eu and p.ev and p.dep and p.lo and p.hi and p.w):
        _release(p)
        raise MemoryError()
    for e in range(m):
        p.eu[e] = eu[e]
        p.ev[e] = ev[e]
        p.dep[e] = dep_masks[e] if dep_masks is not None else 0
        p.lo[e] = lower[e] if lower is not None else 0
        p.hi[e] = upper[e] if upper is not None else 0
        p.w[e] = weights[e] if weights is not None else 0
    return 0


cdef void _release(Problem *p):
    free(p.eu)
    free(p.ev)
    free(p.dep)
    free(p.lo)
    free(p.hi)
    free(p.w)


cdef inline bint _bounds_ok(Problem *p, uint64_t mask) nogil:
    cdef uint64_t mm = mask
    cdef int e = 0
    cdef int c
    while mm:
        if mm & 1:
            c = __builtin_popcountll(p.dep[e] & mask)
            if c < p.lo[e] or c > p.hi[e]:
                return False
        mm >>= 1
        e += 1
    return True


cdef inline int64_t _weight(Problem *p, uint64_t mask) nogil:
    cdef int64_t total = 0
    cdef int e = 0
    while mask:
        if mask & 1:
            total += p.w[e]
        mask >>= 1
        e += 1
    return total


cdef inline int _root(int *parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef bint _is_tree(Problem *p, uint64_t mask, int *parent) nogil:
    cdef int i, a, b
    cdef int e = 0
    if __builtin_popcountll(mask) != p.n - 1:
        return False
    for i in range(p.n):
        parent[i] = i
    while mask:
        if mask & 1:
            a = _root(parent, p.eu[e])
            b = _root(parent, p.ev[e])
            if a == b:
                return False
            parent[a] = b
        mask >>= 1
        e += 1
    return True


def is_tree_mask(int n, eu, ev, mask):
    cdef Problem p
    _load(&p, n, eu, ev, None, None, None, None)
    cdef int *parent = <int *> malloc(n * sizeof(int))
    try:
        return bool(_is_tree(&p, <uint64_t> mask, parent))
    finally:
        free(parent)
        _release(&p)


def scan_subsets(int n, eu, ev, dep_masks, lower, upper, weights, bint optimize):
    cdef Problem p
    _load(&p, n, eu, ev, dep_masks, lower, upper, weights)
    cdef int *parent = <int *> malloc(n * sizeof(int))
    cdef uint64_t mask, last
    cdef uint64_t count = 0
    cdef long long best_mask = -1
    cdef int64_t best_w = 0, w
    last = (<uint64_t> 1 << p.m) - 1
    try:
        with nogil:
            mask = 0
            while True:
                count += 1
                if (__builtin_popcountll(mask) == n - 1 and _is_tree(&p, mask, parent)
                        and _bounds_ok(&p, mask)):
                    w = _weight(&p, mask)
                    if best_mask < 0 or w < best_w:
                        best_mask = <long long> mask
                        best_w = w
                    if not optimize:
                        break
                if mask == last:
                    break
                mask += 1
        return int(count), int(best_mask), int(best_w)
    finally:
        free(parent)
        _release(&p)


cdef struct Walk:
    Problem *p
    int *labels      # (m + 1) * n scratch, one slot per depth
    int *parent      # n scratch for connectivity checks
    int mode         # 0 collect, 1 scan
    bint optimize
    bint stop
    long long count
    long long best_mask
    int64_t best_w


cdef bint _connected_after(Walk *wk, int *label, int inc, int i) nogil:
    cdef Problem *p = wk.p
    cdef int need = p.n - inc - 1
    cdef int j, a, b
    if need == 0:
        return True
    for j in range(p.n):
        wk.parent[j] = j
    for j in range(i + 1, p.m):
        a = _root(wk.parent, label[p.eu[j]])
        b = _root(wk.parent, label[p.ev[j]])
        if a != b:
            wk.parent[a] = b
            need -= 1
            if need == 0:
                return True
    return False


cdef int _visit(Walk *wk, uint64_t mask, list out) except -1:
    cdef int64_t w
    wk.count += 1
    if wk.mode == 0:
        out.append(mask)
        return 0
    if _bounds_ok(wk.p, mask):
        w = _weight(wk.p, mask)
        if wk.best_mask < 0 or w < wk.best_w:
            wk.best_mask = <long long> mask
            wk.best_w = w
        if not wk.optimize:
            wk.stop = True
    return 0


cdef int _rec(Walk *wk, int i, int inc, uint64_t mask, int *label, list out) except -1:
    cdef Problem *p = wk.p
    cdef int a, b, v
    cdef int *merged
    if inc == p.n - 1:
        _visit(wk, mask, out)
        return 0
    if i == p.m:
        return 0
    a = label[p.eu[i]]
    b = label[p.ev[i]]
    if a == b:
        return _rec(wk, i + 1, inc, mask, label, out)
    merged = wk.labels + (i + 1) * p.n
    for v in range(p.n):
        merged[v] = b if label[v] == a else label[v]
    _rec(wk, i + 1, inc + 1, mask | (<uint64_t> 1 << i), merged, out)
    if wk.stop:
        return 0
    if _connected_after(wk, label, inc, i):
        _rec(wk, i + 1, inc, mask, label, out)
    return 0


cdef _walk(Problem *p, int mode, bint optimize, list out):
    cdef Walk wk
    cdef int v
    wk.p = p
    wk.mode = mode
    wk.optimize = optimize
    wk.stop = False
    wk.count = 0
    wk.best_mask = -1
    wk.best_w = 0
    wk.labels = <int *> malloc((p.m + 2) * p.n * sizeof(int))
    wk.parent = <int *> malloc(p.n * sizeof(int))
    try:
        if p.n == 1:
            _visit(&wk, 0, out)
        else:
            for v in range(p.n):
                wk.labels[v] = v
            if _connected_after(&wk, wk.labels, 0, -1):
                _rec(&wk, 0, 0, 0, wk.labels, out)
        return wk.count, wk.best_mask, wk.best_w
    finally:
        free(wk.labels)
        free(wk.parent)


def spanning_tree_masks(int n, eu, ev):
    cdef Problem p
    cdef list out = []
    _load(&p, n, eu, ev, None, None, None, None)
    try:
        _walk(&p, 0, False, out)
    finally:
        _release(&p)
    return [int(x) for x in out]


def scan_trees(int n, eu, ev, dep_masks, lower, upper, weights, bint optimize):
    cdef Problem p
    _load(&p, n, eu, ev, dep_masks, lower, upper, weights)
    try:
        count, best_mask, best_w = _walk(&p, 1, optimize, None)
    finally:
        _release(&p)
    return int(count), int(best_mask), int(best_w)


# -- pruned walk: counts instead of masks, so any m works -------------------

cdef struct PWalk:
    int n
    int m
    int *eu
    int *ev
    int *out_start   # CSR: out-neighbours of e are out_idx[out_start[e]:out_start[e+1]]
    int *out_idx
    int *lo
    int *hi
    int64_t *w
    bint weighted
    bint optimize
    bint stop
    char *state      # 1 when included
    int *inc_cnt     # included dependencies
    int *und_cnt     # undecided dependencies
    int *labels
    int *parent
    char *best
    bint has_best
    int64_t best_w
    long long count


cdef inline void _pdecide(PWalk *wk, int i, int sign, char take) nogil:
    cdef int k, h
    wk.state[i] = take if sign > 0 else 0
    for k in range(wk.out_start[i], wk.out_start[i + 1]):
        h = wk.out_idx[k]
        wk.und_cnt[h] -= sign
        if take:
            wk.inc_cnt[h] += sign


cdef inline bint _pcheck(PWalk *wk, int h) nogil:
    cdef int inc = wk.inc_cnt[h]
    return inc <= wk.hi[h] and inc + wk.und_cnt[h] >= wk.lo[h]


cdef inline bint _pok(PWalk *wk, int i) nogil:
    cdef int k, h
    if wk.state[i] and not _pcheck(wk, i):
        return False
    for k in range(wk.out_start[i], wk.out_start[i + 1]):
        h = wk.out_idx[k]
        if h < i and wk.state[h] and not _pcheck(wk, h):
            return False
    return True


cdef bint _pconnected_after(PWalk *wk, int *label, int inc, int i) nogil:
    cdef int need = wk.n - inc - 1
    cdef int j, a, b
    if need == 0:
        return True
    for j in range(wk.n):
        wk.parent[j] = j
    for j in range(i + 1, wk.m):
        a = _root(wk.parent, label[wk.eu[j]])
        b = _root(wk.parent, label[wk.ev[j]])
        if a != b:
            wk.parent[a] = b
            need -= 1
            if need == 0:
                return True
    return False


cdef void _pleaf(PWalk *wk) nogil:
    cdef int e
    cdef int64_t total = 0
    for e in range(wk.m):
        if wk.state[e]:
            if wk.inc_cnt[e] < wk.lo[e] or wk.inc_cnt[e] > wk.hi[e]:
                return
            if wk.weighted:
                total += wk.w[e]
    if not wk.has_best or total < wk.best_w:
        wk.has_best = True
        wk.best_w = total
        memcpy(wk.best, wk.state, wk.m)
    if not wk.optimize:
        wk.stop = True


cdef void _prec(PWalk *wk, int i, int inc, int *label) nogil:
    cdef int a, b, v
    cdef int *merged
    wk.count += 1
    if inc == wk.n - 1:
        _pleaf(wk)
        return
    if i == wk.m:
        return
    a = label[wk.eu[i]]
    b = label[wk.ev[i]]
    if a == b:
        _pdecide(wk, i, 1, 0)
        if _pok(wk, i):
            _prec(wk, i + 1, inc, label)
        _pdecide(wk, i, -1, 0)
        return
    _pdecide(wk, i, 1, 1)
    if _pok(wk, i):
        merged = wk.labels + (i + 1) * wk.n
        for v in range(wk.n):
            merged[v] = b if label[v] == a else label[v]
        _prec(wk, i + 1, inc + 1, merged)
    _pdecide(wk, i, -1, 1)
    if wk.stop:
        return
    _pdecide(wk, i, 1, 0)
    if _pok(wk, i) and _pconnected_after(wk, label, inc, i):
        _prec(wk, i + 1, inc, label)
    _pdecide(wk, i, -1, 0)


def scan_pruned(int n, eu, ev, deps, lower, upper, weights, bint optimize):
    cdef int m = len(eu)
    cdef int e, k, total_arcs = 0
    cdef PWalk wk
    cdef list outs = [[] for _ in range(m)]
    for e in range(m):
        for t in deps[e]:
            outs[t].append(e)
        total_arcs += len(deps[e])
    wk.n = n
    wk.m = m
    wk.weighted = weights is not None
    wk.optimize = optimize
    wk.stop = False
    wk.has_best = False
    wk.best_w = 0
    wk.count = 0
    wk.eu = <int *> malloc((m + 1) * sizeof(int))
    wk.ev = <int *> malloc((m + 1) * sizeof(int))
    wk.out_start = <int *> malloc((m + 2) * sizeof(int))
    wk.out_idx = <int *> malloc((total_arcs + 1) * sizeof(int))
    wk.lo = <int *> malloc((m + 1) * sizeof(int))
    wk.hi = <int *> malloc((m + 1) * sizeof(int))
    wk.w = <int64_t *> malloc((m + 1) * sizeof(int64_t))
    wk.state = <char *> malloc(m + 1)
    wk.best = <char *> malloc(m + 1)
    wk.inc_cnt = <int *> malloc((m + 1) * sizeof(int))
    wk.und_cnt = <int *> malloc((m + 1) * sizeof(int))
    wk.labels = <int *> malloc((m + 2) * n * sizeof(int))
    wk.parent = <int *> malloc(n * sizeof(int))
    try:
        if not (wk.eu and wk.ev and wk.out_start and wk.out_idx and wk.lo and wk.hi and wk.w
                and wk.state and wk.best and wk.inc_cnt and wk.und_cnt and wk.labels and wk.parent):
            raise MemoryError()
        k = 0
        for e in range(m):
            wk.eu[e] = eu[e]
            wk.ev[e] = ev[e]
            wk.lo[e] = lower[e]
            wk.hi[e] = upper[e]
            wk.w[e] = weights[e] if weights is not None else 0
            wk.state[e] = 0
            wk.inc_cnt[e] = 0
            wk.und_cnt[e] = len(deps[e])
            wk.out_start[e] = k
            for h in outs[e]:
                wk.out_idx[k] = h
                k += 1
        wk.out_start[m] = k
        for e in range(n):
            wk.labels[e] = e
        with nogil:
            if n == 1:
                wk.count = 1
                _pleaf(&wk)
            elif _pconnected_after(&wk, wk.labels, 0, -1):
                _prec(&wk, 0, 0, wk.labels)
        if not wk.has_best:
            return int(wk.count), None, 0
        return int(wk.count), [e for e in range(m) if wk.best[e]], int(wk.best_w)
    finally:
        free(wk.eu)
        free(wk.ev)
        free(wk.out_start)
        free(wk.out_idx)
        free(wk.lo)
        free(wk.hi)
        free(wk.w)
        free(wk.state)
        free(wk.best)
        free(wk.inc_cnt)
        free(wk.und_cnt)
        free(wk.labels)
        free(wk.parent)
