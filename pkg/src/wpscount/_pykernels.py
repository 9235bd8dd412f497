"""Pure-Python enumeration kernels (fallback for the compiled ``_ckernels``).

Both kernels walk the box ``|x_i| <= bounds[i]`` coordinate by coordinate
and keep, at each depth, the primes ``p`` that could still divide the
weighted content (``p**w_i | x_i`` for every nonzero coordinate so far).
A tuple is counted when at least one coordinate is nonzero, no candidate
prime survives, every ``nonzero`` coordinate is nonzero, and the first
nonzero odd-weight coordinate is positive (one representative per
``{x, (-1)_*x}``).

The first coordinate is restricted to ``lo..hi``; callers split that range
into chunks for parallel work and must pass ``lo >= 0`` when ``weights[0]``
is odd.
"""
from __future__ import annotations

import numpy as np


def _primes_with_power_dividing(x: int, w: int) -> list[int]:
    out = []
    p = 2
    while p * p <= x:
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            if e >= w:
                out.append(p)
        p += 1 if p == 2 else 2
    if x > 1 and w == 1:
        out.append(x)
    return out


def _completions(weights, bounds, nonzero):
    m = len(weights)
    suf_all = [1] * (m + 1)
    suf_fix = [1] * (m + 1)
    for j in range(m - 1, -1, -1):
        a = 2 * bounds[j] + 1 - (1 if nonzero[j] else 0)
        if weights[j] % 2 == 0:
            f = a
        else:
            f = 0 if nonzero[j] else 1
        suf_all[j] = suf_all[j + 1] * a
        suf_fix[j] = suf_fix[j + 1] * f
    return suf_all, suf_fix


def count_box(weights, bounds, nonzero, lo, hi) -> int:
    weights = [int(w) for w in weights]
    bounds = [int(n) for n in bounds]
    nonzero = [bool(z) for z in nonzero]
    m = len(weights)
    suf_all, suf_fix = _completions(weights, bounds, nonzero)

    def rec(i, cands, seen, decided):
        if seen and not cands:
            if decided:
                return suf_all[i]
            return (suf_all[i] + suf_fix[i]) // 2
        if i == m:
            return 0
        w = weights[i]
        n = bounds[i]
        if i == 0:
            rng = range(lo, hi + 1)
        elif not decided and w % 2:
            rng = range(0, n + 1)
        else:
            rng = range(-n, n + 1)
        odd = w % 2 == 1
        total = 0
        for x in rng:
            if x == 0:
                if nonzero[i]:
                    continue
                total += rec(i + 1, cands, seen, decided)
                continue
            ax = -x if x < 0 else x
            if seen:
                nc = [p for p in cands if ax % (p**w) == 0]
            else:
                nc = _primes_with_power_dividing(ax, w)
            total += rec(i + 1, nc, True, decided or odd)
        return total

    return rec(0, [], False, False)


def size_histogram(weights, bounds, nonzero, L, lo, hi) -> np.ndarray:
    """Counts of canonical points by ``key = max_i |x_i|**(L // w_i)``."""
    weights = [int(w) for w in weights]
    bounds = [int(n) for n in bounds]
    nonzero = [bool(z) for z in nonzero]
    m = len(weights)
    exps = [L // w for w in weights]
    max_key = max(n**e for n, e in zip(bounds, exps))
    hist = np.zeros(max_key + 1, dtype=np.int64)

    def rec(i, cands, seen, decided, key):
        if i == m:
            if seen and not cands:
                hist[key] += 1
            return
        w = weights[i]
        n = bounds[i]
        e = exps[i]
        if i == 0:
            rng = range(lo, hi + 1)
        elif not decided and w % 2:
            rng = range(0, n + 1)
        else:
            rng = range(-n, n + 1)
        odd = w % 2 == 1
        for x in rng:
            if x == 0:
                if nonzero[i]:
                    continue
                rec(i + 1, cands, seen, decided, key)
                continue
            ax = -x if x < 0 else x
            if seen:
                nc = [p for p in cands if ax % (p**w) == 0] if cands else cands
            else:
                nc = _primes_with_power_dividing(ax, w)
            k = ax**e
            rec(i + 1, nc, True, decided or odd, k if k > key else key)

    rec(0, [], False, False, 0)
    return hist
