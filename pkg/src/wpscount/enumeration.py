"""Exact counting of rational points of bounded size.

Two independent routes are provided for single weighted spaces:

* ``direct``: enumerate lattice tuples in the box cut out by the bound,
  keep those with trivial weighted content, one per unit orbit;
* ``moebius``: count all unit orbits of nonzero tuples in ``(AB)^w`` with
  ``H_inf <= T N(A)`` in closed form and invert over ideals ``B``.

Products are counted exactly from per-factor size histograms.
"""
from __future__ import annotations

import bisect
import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceededError, InputError
from .number_field import (
    FieldData,
    IdealRep,
    factor_integer,
    ideal_valuation,
    integral_ideals_up_to,
    make_field,
    moebius_ideal,
    moebius_table,
    pair_mul,
    pair_norm,
    pair_valuation,
    primes_above,
)
from .weighted_space import (
    DivisorClass,
    Radical,
    Weight,
    canonicalize,
)

DEFAULT_BUDGET = 10**9
DIRECT = "direct"
MOEBIUS = "moebius"


@dataclass(frozen=True)
class CountQuery:
    field: FieldData
    weights: tuple[Weight, ...]
    divisor: DivisorClass
    bound: Radical
    open_constraint: tuple[tuple[int, int], ...] = ()  # (factor, coordinate), 0-based
    method: str = DIRECT

    @classmethod
    def make(cls, field=None, weights=("1,1",), divisor=None, bound=1, open_constraint=(), method=DIRECT):
        F = field if isinstance(field, FieldData) else make_field(field)
        if isinstance(weights, (str, Weight)):
            weights = (weights,)
        ws = tuple(Weight.parse(W) for W in weights)
        if divisor is None:
            divisor = (1,) if len(ws) == 1 else tuple(W.total for W in ws)
        D = DivisorClass.parse(divisor)
        if len(D) != len(ws):
            raise InputError(f"divisor has {len(D)} entries for {len(ws)} factors")
        return cls(F, ws, D, Radical.of(bound), tuple(open_constraint), method)

    def with_bound(self, bound) -> "CountQuery":
        return replace(self, bound=Radical.of(bound))


@dataclass(frozen=True)
class CountResult:
    query: CountQuery
    count: int
    per_class: tuple[tuple[IdealRep, int], ...] = ()
    wall_time: float = 0.0


@dataclass
class CountSeries:
    rows: list[tuple[Radical, CountResult]] = field(default_factory=list)

    def bounds(self):
        return [T for T, _ in self.rows]

    def counts(self):
        return [r.count for _, r in self.rows]


# --- helpers ----------------------------------------------------------------


def _nonzero_mask(m: int, open_constraint) -> list[bool]:
    mask = [False] * m
    for i in open_constraint:
        if not 0 <= i < m:
            raise InputError(f"open constraint refers to coordinate {i + 1} of a {m}-coordinate space")
        mask[i] = True
    return mask


def _box_size(bounds) -> int:
    out = 1
    for n in bounds:
        out *= 2 * n + 1
    return out


def _check_budget(required: int, budget: int):
    if required > budget:
        raise BudgetExceededError(required, budget)


def _chunks(lo: int, hi: int, parts: int):
    parts = max(1, min(parts, hi - lo + 1))
    edges = np.linspace(lo, hi + 1, parts + 1).astype(np.int64)
    return [(int(a), int(b) - 1) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_parallel(fn, items, workers: int):
    if workers <= 1 or len(items) == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _rational_layout(W: Weight, T: Radical, open_constraint):
    """Coordinates sorted by weight (smallest ranges first) with their bounds."""
    order = sorted(range(W.m), key=lambda i: (W[i], i))
    weights = [W[i] for i in order]
    bounds = [T.floor_pow(W[i]) for i in order]
    mask = _nonzero_mask(W.m, open_constraint)
    nonzero = [mask[i] for i in order]
    return weights, bounds, nonzero


# --- direct counting over Q ------------------------------------------------


def count_points_rational(
    W,
    T,
    open_constraint: Sequence[int] = (),
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    backend=None,
) -> CountResult:
    """#{x in P(W)(Q) : Size(x) <= T}, optionally on the open set where given coordinates are nonzero."""
    W = Weight.parse(W)
    T = Radical.of(T)
    t0 = time.perf_counter()
    weights, bounds, nonzero = _rational_layout(W, T, open_constraint)
    _check_budget(_box_size(bounds), budget)
    n0 = bounds[0]
    lo = 0 if weights[0] % 2 else -n0
    parts = 1 if workers <= 1 else 8 * workers
    jobs = _chunks(lo, n0, parts)
    counts = _run_parallel(
        lambda c: kernels.count_box(weights, bounds, nonzero, c[0], c[1], backend=backend),
        jobs,
        workers,
    )
    total = sum(counts)
    F = make_field(None)
    q = CountQuery(F, (W,), DivisorClass((1,)), T, tuple((0, i) for i in open_constraint), DIRECT)
    return CountResult(q, total, ((F.unit_ideal(), total),), time.perf_counter() - t0)


# --- quadratic fields --------------------------------------------------------


def lattice_points_in_disk(J: IdealRep, R: int):
    """Elements ``(u, v)`` of the integral ideal J with norm <= R, with their norms."""
    F = J.field
    t, n = F.t, F.n
    a, b, c = J.a, J.b, J.c
    disc_coef = 4 * n - t * t  # (2u + t v)^2 + disc_coef * v^2 = 4 N
    out = []
    if R < 0:
        return out
    vmax = math.isqrt(4 * R // disc_coef)
    kmax = vmax // c
    for k in range(-kmax, kmax + 1):
        v = k * c
        rem = 4 * R - disc_coef * v * v
        if rem < 0:
            continue
        s = math.isqrt(rem)
        ulo = -((s + t * v) // 2)  # ceil((-s - t v)/2)
        uhi = (s - t * v) // 2
        # u = m*a + k*b
        off = k * b
        mlo = -((off - ulo) // a)  # ceil((ulo - off)/a)
        mhi = (uhi - off) // a
        for mm in range(mlo, mhi + 1):
            u = mm * a + off
            out.append((u, v, pair_norm(u, v, t, n)))
    return out


def count_lattice_points_in_disk(J: IdealRep, R: int) -> int:
    F = J.field
    if F.is_rational:
        return 2 * (R // J.a) + 1 if R >= 0 else 0
    t, n = F.t, F.n
    a, b, c = J.a, J.b, J.c
    disc_coef = 4 * n - t * t
    if R < 0:
        return 0
    total = 0
    kmax = math.isqrt(4 * R // disc_coef) // c
    for k in range(-kmax, kmax + 1):
        v = k * c
        rem = 4 * R - disc_coef * v * v
        if rem < 0:
            continue
        s = math.isqrt(rem)
        ulo = -((s + t * v) // 2)
        uhi = (s - t * v) // 2
        off = k * b
        mlo = -((off - ulo) // a)
        mhi = (uhi - off) // a
        if mhi >= mlo:
            total += mhi - mlo + 1
    return total


def _unit_powers(F: FieldData, weights):
    """For each root of unity u != 1: the pairs u^w_i."""
    out = []
    for u in F.roots_of_unity[1:]:
        out.append([(u**w).pair() for w in weights])
    return out


def _class_points(F: FieldData, A: IdealRep, W: Weight, T: Radical, nonzero, first_slice=None):
    """Yield unit-canonical tuples x in A^w with I(x) = A and H_inf(x) <= T N(A).

    Each yielded item is ``(pairs, norms)``.
    """
    NA = int(A.norm())
    TA = T * NA
    lists = []
    for i, w in enumerate(W.entries):
        R = TA.floor_pow(w)
        pts = lattice_points_in_disk(A**w, R)
        if nonzero[i]:
            pts = [p for p in pts if p[2] != 0]
        lists.append(pts)
    if first_slice is not None:
        lists[0] = lists[0][first_slice[0] : first_slice[1]]
    a_val = {P: ideal_valuation(A, P) for p in (factor_integer(NA) if NA > 1 else {}) for P in primes_above(F, p)}
    scale = [NA**w for w in W.entries]
    units = _unit_powers(F, W.entries)
    t, n = F.t, F.n

    def content_ok(pairs, norms):
        g = 0
        for (nr, sc) in zip(norms, scale):
            if nr:
                g = math.gcd(g, nr // sc)
        if g == 1:
            return True
        if g == 0:
            return False
        for p in factor_integer(g):
            for P in primes_above(F, p):
                vA = a_val.get(P, 0)
                e = min(pair_valuation(u, v, P) // w for (u, v), w, nr in zip(pairs, W.entries, norms) if nr)
                if e > vA:
                    return False
        return True

    def unit_ok(pairs):
        for up in units:
            img = tuple(pair_mul(x, q, t, n) for x, q in zip(pairs, up))
            if img < pairs:
                return False
        return True

    for combo in itertools.product(*lists):
        norms = [c[2] for c in combo]
        if not any(norms):
            continue
        pairs = tuple((c[0], c[1]) for c in combo)
        if not content_ok(pairs, norms):
            continue
        if units and not unit_ok(pairs):
            continue
        yield pairs, norms


def _quadratic_budget(F, W, T, A):
    NA = int(A.norm())
    est = 1
    for w in W.entries:
        R = (T * NA).floor_pow(w)
        est *= count_lattice_points_in_disk(A**w, R)
    return est


def count_points_quadratic(
    F: FieldData,
    W,
    T,
    open_constraint: Sequence[int] = (),
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> CountResult:
    """#{x in P(W)(F) : Size(x) <= T} for an imaginary quadratic field, split by ideal class."""
    if F.is_rational:
        raise InputError("count_points_quadratic needs an imaginary quadratic field")
    W = Weight.parse(W)
    T = Radical.of(T)
    t0 = time.perf_counter()
    nonzero = _nonzero_mask(W.m, open_constraint)
    need = sum(_quadratic_budget(F, W, T, A) for A in F.class_reps)
    _check_budget(need, budget)
    per_class = []
    for A in F.class_reps:
        NA = int(A.norm())
        R0 = (T * NA).floor_pow(W[0])
        n_first = len(lattice_points_in_disk(A ** W[0], R0))
        parts = 1 if workers <= 1 else 4 * workers
        slices = _chunks(0, n_first - 1, parts) if n_first else []

        def job(sl, A=A):
            return sum(1 for _ in _class_points(F, A, W, T, nonzero, (sl[0], sl[1] + 1)))

        c = sum(_run_parallel(job, slices, workers)) if slices else 0
        per_class.append((A, c))
    total = sum(c for _, c in per_class)
    q = CountQuery(F, (W,), DivisorClass((1,)), T, tuple((0, i) for i in open_constraint), DIRECT)
    return CountResult(q, total, tuple(per_class), time.perf_counter() - t0)


# --- Moebius inversion -------------------------------------------------------


def _orbit_count(F: FieldData, counts, weights, nonzero) -> int:
    """Unit orbits of nonzero tuples, coordinate i ranging over a set of size counts[i] containing 0
    (minus 0 if constrained); Burnside over the roots of unity."""
    allow_zero_tuple = not any(nonzero)
    total = 0
    for u in F.roots_of_unity:
        prod = 1
        for c, w, nz in zip(counts, weights, nonzero):
            fixed_all = (u**w) == F.one()
            if fixed_all:
                prod *= c - (1 if nz else 0)
            else:
                prod *= 0 if nz else 1
        total += prod - (1 if allow_zero_tuple else 0)
    if total % F.w:
        raise AssertionError("Burnside count not divisible by the unit group order")
    return total // F.w


def count_moebius_sieve(F, W, T, open_constraint: Sequence[int] = ()) -> CountResult:
    """Same count as the direct engines via Moebius inversion over ideals."""
    F = F if isinstance(F, FieldData) else make_field(F)
    W = Weight.parse(W)
    T = Radical.of(T)
    t0 = time.perf_counter()
    nonzero = _nonzero_mask(W.m, open_constraint)
    Tfloor = T.floor_pow(1)
    per_class = []
    if F.is_rational:
        bounds = [T.floor_pow(w) for w in W.entries]
        mu = moebius_table(max(Tfloor, 1))
        total = 0
        for d in range(1, Tfloor + 1):
            if mu[d] == 0:
                continue
            counts = [2 * (n // d**w) + 1 for n, w in zip(bounds, W.entries)]
            total += int(mu[d]) * _orbit_count(F, counts, W.entries, nonzero)
        per_class.append((F.unit_ideal(), total))
    else:
        ideals = [(B, moebius_ideal(B)) for B in integral_ideals_up_to(F, Tfloor)]
        for A in F.class_reps:
            NA = int(A.norm())
            radii = [(T * NA).floor_pow(w) for w in W.entries]
            total = 0
            for B, mu in ideals:
                if mu == 0:
                    continue
                AB = A * B
                counts = [count_lattice_points_in_disk(AB**w, R) for w, R in zip(W.entries, radii)]
                total += mu * _orbit_count(F, counts, W.entries, nonzero)
            per_class.append((A, total))
    total = sum(c for _, c in per_class)
    q = CountQuery(F, (W,), DivisorClass((1,)), T, tuple((0, i) for i in open_constraint), MOEBIUS)
    return CountResult(q, total, tuple(per_class), time.perf_counter() - t0)


# --- dispatch ----------------------------------------------------------------


def count_points(F, W, T, e: int = 1, open_constraint=(), *, method=DIRECT, workers=1, budget=DEFAULT_BUDGET) -> CountResult:
    """#{x : Size(x)**e <= T}."""
    F = F if isinstance(F, FieldData) else make_field(F)
    T = Radical.of(T)
    bound = Radical(T.value, T.root * e)
    if method == MOEBIUS:
        res = count_moebius_sieve(F, W, bound, open_constraint)
    elif method == DIRECT:
        if F.is_rational:
            res = count_points_rational(W, bound, open_constraint, workers=workers, budget=budget)
        else:
            res = count_points_quadratic(F, W, bound, open_constraint, workers=workers, budget=budget)
    else:
        raise InputError(f"unknown method {method!r}")
    q = CountQuery(F, (Weight.parse(W),), DivisorClass((e,)), T, tuple((0, i) for i in open_constraint), method)
    return replace(res, query=q)


# --- size histograms and products -------------------------------------------


def size_histogram(F, W, S, open_constraint=(), *, workers=1, budget=DEFAULT_BUDGET, backend=None):
    """Sorted ``[(size, multiplicity)]`` of all points with Size <= S."""
    F = F if isinstance(F, FieldData) else make_field(F)
    W = Weight.parse(W)
    S = Radical.of(S)
    if F.is_rational:
        weights, bounds, nonzero = _rational_layout(W, S, open_constraint)
        _check_budget(_box_size(bounds), budget)
        L = W.lcm
        max_key = max(n ** (L // w) for n, w in zip(bounds, weights))
        _check_budget(max_key + 1, budget // 8 if budget > 8 else budget)
        n0 = bounds[0]
        lo = 0 if weights[0] % 2 else -n0
        parts = 1 if workers <= 1 else 8 * workers
        jobs = _chunks(lo, n0, parts)
        hists = _run_parallel(
            lambda c: kernels.size_histogram(weights, bounds, nonzero, L, c[0], c[1], backend=backend),
            jobs,
            workers,
        )
        hist = np.sum(hists, axis=0)
        keys = np.nonzero(hist)[0]
        return [(Radical(int(k), L), int(hist[k])) for k in keys]
    nonzero = _nonzero_mask(W.m, open_constraint)
    _check_budget(sum(_quadratic_budget(F, W, S, A) for A in F.class_reps), budget)
    L = W.lcm
    acc: dict[Radical, int] = {}
    for A in F.class_reps:
        NA = int(A.norm())
        for pairs, norms in _class_points(F, A, W, S, nonzero):
            key = max(nr ** (L // w) for nr, w in zip(norms, W.entries))
            r = Radical(Fraction(key, NA**L), L)
            acc[r] = acc.get(r, 0) + 1
    return sorted(acc.items(), key=lambda kv: kv[0])


class _Histogram:
    def __init__(self, items, a):
        self.sizes = [s for s, _ in items]
        self.mult = [c for _, c in items]
        self.cum = list(itertools.accumulate(self.mult))
        self.a = a

    def count_le(self, bound: Radical) -> int:
        """#points with size**a <= bound."""
        lim = Radical(bound.value, bound.root * self.a)
        k = bisect.bisect_right(self.sizes, lim)
        return self.cum[k - 1] if k else 0


def count_product(
    F,
    weights,
    D=None,
    T=1,
    open_constraint: Sequence[tuple[int, int]] = (),
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> CountResult:
    """#{(x_1..x_k) : prod Size(x_j)**a_j <= T}."""
    q = CountQuery.make(F, weights, D, T, open_constraint, DIRECT)
    F, ws, Dv, T = q.field, q.weights, q.divisor, q.bound
    if any(a == 0 for a in Dv.a):
        raise InputError("a factor with divisor entry 0 has unbounded size; the count is infinite")
    t0 = time.perf_counter()
    if T < 1:
        return CountResult(q, 0, (), time.perf_counter() - t0)
    hists = []
    for j, (W, a) in enumerate(zip(ws, Dv.a)):
        oc = [i for jj, i in open_constraint if jj == j]
        S = Radical(T.value, T.root * a)
        hists.append(_Histogram(size_histogram(F, W, S, oc, workers=workers, budget=budget), a))
    # the factor with the most distinct sizes is resolved by binary search
    last = max(range(len(hists)), key=lambda j: len(hists[j].sizes))
    outer = [h for j, h in enumerate(hists) if j != last]
    inner = hists[last]

    def rec(k, bound: Radical):
        if k == len(outer):
            return inner.count_le(bound)
        h = outer[k]
        total = 0
        for s, c in zip(h.sizes, h.mult):
            sa = s**h.a
            if sa > bound:
                break
            total += c * rec(k + 1, bound / sa)
        return total

    count = rec(0, T)
    return CountResult(q, count, (), time.perf_counter() - t0)


# --- brute-force oracle ------------------------------------------------------


def _canonical_int_tuple(x, weights, factor_cache):
    """Canonical representative of an integral tuple over Q: divide out the weighted content, fix the sign."""
    g = 0
    for c in x:
        g = math.gcd(g, c)
    if g > 1:
        fac = factor_cache.get(g)
        if fac is None:
            fac = factor_cache[g] = factor_integer(g)
        d = 1
        for p in fac:
            e = min(_vp(c, p) // w for c, w in zip(x, weights) if c)
            d *= p**e
        if d > 1:
            x = tuple(c // d**w for c, w in zip(x, weights))
    for c, w in zip(x, weights):
        if w % 2 and c:
            if c < 0:
                x = tuple(-y if ww % 2 else y for y, ww in zip(x, weights))
            break
    return x


def _vp(c, p):
    e = 0
    c = abs(c)
    while c % p == 0:
        c //= p
        e += 1
    return e


@dataclass
class SizeTable:
    """Canonical points with their sizes, stored as ``key = size**L`` (an exact rational)."""

    keys: dict
    L: int

    def count_le(self, T) -> int:
        T = Radical.of(T)
        lim = T.value**self.L
        r = T.root
        return sum(1 for k in self.keys.values() if Fraction(k) ** r <= lim)

    def sizes(self) -> dict:
        return {y: Radical(k, self.L) for y, k in self.keys.items()}


def brute_force_sizes(F, W, T, open_constraint=()) -> SizeTable:
    """All points with Size <= T, found by grouping every integral tuple of a
    sufficiently large box by its canonical representative."""
    F = F if isinstance(F, FieldData) else make_field(F)
    W = Weight.parse(W)
    T = Radical.of(T)
    L = W.lcm
    exps = [L // w for w in W.entries]
    keys: dict = {}
    if F.is_rational:
        weights = W.entries
        cache: dict = {}
        ranges = [range(-T.floor_pow(w), T.floor_pow(w) + 1) for w in weights]
        for x in itertools.product(*ranges):
            if not any(x) or any(x[i] == 0 for i in open_constraint):
                continue
            y = _canonical_int_tuple(x, weights, cache)
            if y not in keys:
                keys[y] = max(abs(c) ** e for c, e in zip(y, exps))
    else:
        nmax = max(int(A.norm()) for A in F.class_reps)
        per = []
        for w in W.entries:
            R = (T * nmax).floor_pow(w)
            per.append([F.element(u, v) for u, v, _ in lattice_points_in_disk(F.unit_ideal(), R)])
        for xs in itertools.product(*per):
            if all(c.is_zero() for c in xs) or any(xs[i].is_zero() for i in open_constraint):
                continue
            P = canonicalize(xs, W, F)
            if P.coords not in keys:
                h = max(c.norm() ** e for c, e in zip(P.coords, exps) if not c.is_zero())
                keys[P.coords] = h / P.content.norm() ** L
    table = SizeTable(keys, L)
    lim, r = T.value**L, T.root
    table.keys = {y: k for y, k in keys.items() if Fraction(k) ** r <= lim}
    return table


def brute_force_count(F, W, T, open_constraint=()) -> int:
    return len(brute_force_sizes(F, W, T, open_constraint).keys)


# --- sweeps --------------------------------------------------------------------


def geometric_grid(T0, Tmax, ratio) -> list[Fraction]:
    T0, Tmax, ratio = Fraction(T0), Fraction(Tmax), Fraction(ratio)
    if T0 <= 0 or ratio <= 1 or Tmax < T0:
        raise InputError("grid needs 0 < T0 <= Tmax and ratio > 1")
    out = []
    T = T0
    while T <= Tmax:
        out.append(T)
        T *= ratio
    return out


def run_query(q: CountQuery, *, workers=1, budget=DEFAULT_BUDGET) -> CountResult:
    if len(q.weights) == 1:
        oc = [i for _j, i in q.open_constraint]
        res = count_points(q.field, q.weights[0], q.bound, q.divisor.a[0], oc, method=q.method, workers=workers, budget=budget)
        return replace(res, query=q)
    if q.method != DIRECT:
        raise InputError("products are only counted directly")
    res = count_product(q.field, q.weights, q.divisor, q.bound, q.open_constraint, workers=workers, budget=budget)
    return replace(res, query=q)


def sweep(template: CountQuery, grid, *, workers=1, budget=DEFAULT_BUDGET) -> CountSeries:
    """One exact count per bound in ``grid`` (an increasing sequence or a (T0, Tmax, ratio) triple)."""
    if isinstance(grid, tuple) and len(grid) == 3 and not isinstance(grid[0], Radical):
        grid = geometric_grid(*grid)
    grid = [Radical.of(T) for T in grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InputError("grid must be strictly increasing")
    series = CountSeries()
    for T in grid:
        series.rows.append((T, run_query(template.with_bound(T), workers=workers, budget=budget)))
    counts = series.counts()
    if any(b < a for a, b in zip(counts, counts[1:])):
        from .errors import InvariantViolation

        raise InvariantViolation("counts decreased along an increasing grid")
    return series
