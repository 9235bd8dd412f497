# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same contract as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    MAXM = 32
    MAXP = 24

ctypedef long long i64


cdef struct State:
    int m
    i64 w[MAXM]
    i64 n[MAXM]
    int nz[MAXM]
    i64 exps[MAXM]
    i64 suf_all[MAXM + 1]
    i64 suf_fix[MAXM + 1]
    i64 lo
    i64 hi
    i64 cand[(MAXM + 1) * MAXP]
    int ncand[MAXM + 1]
    i64* hist


cdef inline int _pow_divides(i64 p, i64 w, i64 ax) nogil:
    # p**w | ax, without overflow
    cdef i64 q = 1
    cdef i64 k
    for k in range(w):
        if q > ax // p:
            return 0
        q *= p
    return ax % q == 0


cdef inline int _first_primes(i64 ax, i64 w, i64* out) nogil:
    cdef int cnt = 0
    cdef i64 p = 2
    cdef i64 e
    while p * p <= ax:
        if ax % p == 0:
            e = 0
            while ax % p == 0:
                ax //= p
                e += 1
            if e >= w:
                out[cnt] = p
                cnt += 1
        p += 1 if p == 2 else 2
    if ax > 1 and w == 1:
        out[cnt] = ax
        cnt += 1
    return cnt


cdef inline int _filter(const i64* src, int ns, i64 w, i64 ax, i64* out) nogil:
    cdef int cnt = 0
    cdef int k
    for k in range(ns):
        if _pow_divides(src[k], w, ax):
            out[cnt] = src[k]
            cnt += 1
    return cnt


cdef i64 _count_rec(State* st, int i, int seen, int decided) nogil:
    cdef int nc = st.ncand[i]
    if seen and nc == 0:
        if decided:
            return st.suf_all[i]
        return (st.suf_all[i] + st.suf_fix[i]) // 2
    if i == st.m:
        return 0
    cdef i64 w = st.w[i]
    cdef i64 n = st.n[i]
    cdef int odd = <int>(w % 2)
    cdef i64 start, stop, x, ax
    if i == 0:
        start = st.lo
        stop = st.hi
    elif (not decided) and odd:
        start = 0
        stop = n
    else:
        start = -n
        stop = n
    cdef i64 total = 0
    cdef int k
    cdef i64* src = &st.cand[i * MAXP]
    cdef i64* dst = &st.cand[(i + 1) * MAXP]
    x = start
    while x <= stop:
        if x == 0:
            if not st.nz[i]:
                # zero keeps the candidate set unchanged
                for k in range(nc):
                    dst[k] = src[k]
                st.ncand[i + 1] = nc
                total += _count_rec(st, i + 1, seen, decided)
            x += 1
            continue
        ax = -x if x < 0 else x
        if seen:
            st.ncand[i + 1] = _filter(src, nc, w, ax, dst)
        else:
            st.ncand[i + 1] = _first_primes(ax, w, dst)
        total += _count_rec(st, i + 1, 1, decided or odd)
        x += 1
    return total


cdef inline i64 _ipow(i64 b, i64 e) nogil:
    cdef i64 r = 1
    cdef i64 k
    for k in range(e):
        r *= b
    return r


cdef void _hist_rec(State* st, int i, int seen, int decided, i64 key) nogil:
    cdef int nc = st.ncand[i]
    if i == st.m:
        if seen and nc == 0:
            st.hist[key] += 1
        return
    cdef i64 w = st.w[i]
    cdef i64 n = st.n[i]
    cdef int odd = <int>(w % 2)
    cdef i64 start, stop, x, ax, kx
    cdef int k
    if i == 0:
        start = st.lo
        stop = st.hi
    elif (not decided) and odd:
        start = 0
        stop = n
    else:
        start = -n
        stop = n
    cdef i64* src = &st.cand[i * MAXP]
    cdef i64* dst = &st.cand[(i + 1) * MAXP]
    x = start
    while x <= stop:
        if x == 0:
            if not st.nz[i]:
                for k in range(nc):
                    dst[k] = src[k]
                st.ncand[i + 1] = nc
                _hist_rec(st, i + 1, seen, decided, key)
            x += 1
            continue
        ax = -x if x < 0 else x
        if seen:
            st.ncand[i + 1] = _filter(src, nc, w, ax, dst) if nc else 0
        else:
            st.ncand[i + 1] = _first_primes(ax, w, dst)
        kx = _ipow(ax, st.exps[i])
        _hist_rec(st, i + 1, 1, decided or odd, kx if kx > key else key)
        x += 1


cdef int _setup(State* st, weights, bounds, nonzero, i64 lo, i64 hi) except -1:
    cdef int m = len(weights)
    if m > MAXM:
        raise ValueError(f"at most {MAXM} coordinates supported")
    st.m = m
    st.lo = lo
    st.hi = hi
    cdef int j
    for j in range(m):
        st.w[j] = int(weights[j])
        st.n[j] = int(bounds[j])
        st.nz[j] = 1 if nonzero[j] else 0
    st.suf_all[m] = 1
    st.suf_fix[m] = 1
    cdef i64 a, f
    for j in range(m - 1, -1, -1):
        a = 2 * st.n[j] + 1 - st.nz[j]
        if st.w[j] % 2 == 0:
            f = a
        else:
            f = 0 if st.nz[j] else 1
        st.suf_all[j] = st.suf_all[j + 1] * a
        st.suf_fix[j] = st.suf_fix[j + 1] * f
    st.ncand[0] = 0
    st.hist = NULL
    return 0


def count_box(weights, bounds, nonzero, lo, hi):
    box = 1
    for n in bounds:
        box *= 2 * int(n) + 1
    if box >= 2**62:
        raise OverflowError("box volume does not fit in 64 bits")
    cdef State* st = <State*> malloc(sizeof(State))
    if st == NULL:
        raise MemoryError()
    cdef i64 result
    try:
        _setup(st, weights, bounds, nonzero, lo, hi)
        with nogil:
            result = _count_rec(st, 0, 0, 0)
    finally:
        free(st)
    return int(result)


def size_histogram(weights, bounds, nonzero, L, lo, hi):
    exps = [int(L) // int(w) for w in weights]
    max_key = max(int(n) ** e for n, e in zip(bounds, exps))
    if max_key >= 2**62:
        raise OverflowError("histogram key does not fit in 64 bits")
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hist = np.zeros(max_key + 1, dtype=np.int64)
    cdef State* st = <State*> malloc(sizeof(State))
    if st == NULL:
        raise MemoryError()
    cdef int j
    try:
        _setup(st, weights, bounds, nonzero, lo, hi)
        for j in range(st.m):
            st.exps[j] = exps[j]
        st.hist = <i64*> hist.data
        with nogil:
            _hist_rec(st, 0, 0, 0, 0)
    finally:
        free(st)
    return hist
