import itertools
from fractions import Fraction

import pytest

from wpscount.enumeration import (
    CountQuery,
    brute_force_count,
    count_lattice_points_in_disk,
    count_moebius_sieve,
    count_points,
    count_points_quadratic,
    count_points_rational,
    count_product,
    geometric_grid,
    lattice_points_in_disk,
    size_histogram,
    sweep,
)
from wpscount.errors import BudgetExceededError, InputError
from wpscount.number_field import make_field, pair_norm
from wpscount.weighted_space import Radical, Weight, canonicalize, size_exact

Q = make_field(None)
QI = make_field(1)
Q5 = make_field(5)


class TestRationalExamples:
    def test_p1_at_one(self):
        assert count_points_rational("1,1", 1).count == 4

    def test_p112_at_one(self):
        assert count_points_rational("1,1,2", 1).count == 14

    def test_below_one(self):
        assert count_points_rational("1,1", Fraction(1, 2)).count == 0
        assert count_moebius_sieve(Q, "1,1", Fraction(9, 10)).count == 0

    def test_p1_small_values(self):
        # 1 + sum_{n<=T} 2 phi(n) + 1, the classical Farey-type count
        assert [count_points_rational("1,1", T).count for T in (1, 2, 3, 4, 5)] == [4, 8, 16, 24, 40]

    def test_irrational_bound(self):
        # Size <= sqrt(8) on P(1,1): same as Size <= 2
        assert count_points_rational("1,1", Radical(8, 2)).count == count_points_rational("1,1", 2).count

    def test_ties_are_inclusive(self):
        # [1:1:2] on P(1,1,2) has size exactly sqrt(2)
        below = count_points_rational("1,1,2", Radical(2, 2) / Radical(Fraction(1001, 1000))).count
        at = count_points_rational("1,1,2", Radical(2, 2)).count
        assert at > below


@pytest.mark.parametrize("W", ["1,1", "1,2", "1,1,2", "1,2,3"])
@pytest.mark.parametrize("F", [Q, QI], ids=["Q", "Q(i)"])
def test_direct_equals_sieve(F, W):
    Ts = range(1, 21) if F.is_rational else (1, 2, 3, 5, 8)
    if not F.is_rational and W == "1,2,3":
        Ts = (1, 2)
    for T in Ts:
        assert count_points(F, W, T).count == count_points(F, W, T, method="moebius").count


def test_fast_canonical_matches_generic():
    from wpscount.enumeration import _canonical_int_tuple

    for W in ("1,1,2", "1,2,3", "2,3,5"):
        Wt = Weight.parse(W)
        for x in itertools.product(range(-6, 7), repeat=3):
            if any(x):
                assert _canonical_int_tuple(x, Wt.entries, {}) == canonicalize(x, Wt).integers()


@pytest.mark.parametrize("W", ["1,1", "1,2", "1,1,2", "1,2,3"])
def test_brute_force_oracle_rational(W):
    for T in (1, 2, 3, 4):
        assert count_points_rational(W, T).count == brute_force_count(Q, W, T)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 23])
def test_brute_force_oracle_quadratic(d):
    F = make_field(d)
    for T in (1, 2, 3):
        direct = count_points_quadratic(F, "1,1", T)
        assert direct.count == brute_force_count(F, "1,1", T)
        assert direct.count == sum(c for _, c in direct.per_class)


class TestQuadratic:
    def test_gaussian_at_one(self):
        assert count_points_quadratic(QI, "1,1", 1).count == 6

    def test_below_one(self):
        for d in (1, 5, 23):
            assert count_points_quadratic(make_field(d), "1,1", Fraction(99, 100)).count == 0

    def test_per_class_split(self):
        res = count_points_quadratic(Q5, "1,1", 2)
        assert len(res.per_class) == 2
        assert sum(c for _, c in res.per_class) == res.count
        assert [A for A, _ in res.per_class] == list(Q5.class_reps)

    def test_sieve_per_class_matches(self):
        a = count_points_quadratic(Q5, "1,2", 6)
        b = count_moebius_sieve(Q5, "1,2", 6)
        assert a.per_class == b.per_class

    def test_rejects_rational(self):
        with pytest.raises(InputError):
            count_points_quadratic(Q, "1,1", 2)

    @pytest.mark.parametrize("d", [1, 2, 3, 5, 23])
    def test_disk_points(self, d):
        F = make_field(d)
        for A in F.class_reps:
            for R in (0, 1, 7, 30):
                pts = lattice_points_in_disk(A, R)
                assert len(pts) == count_lattice_points_in_disk(A, R)
                assert len(set((u, v) for u, v, _ in pts)) == len(pts)
                assert all(A.contains_pair(u, v) and n == pair_norm(u, v, F.t, F.n) <= R for u, v, n in pts)
                # completeness against a square scan
                want = sum(
                    1
                    for u, v in itertools.product(range(-8, 9), repeat=2)
                    if pair_norm(u, v, F.t, F.n) <= R and A.contains_pair(u, v)
                )
                assert len(pts) == want


class TestOpenSubsets:
    @pytest.mark.parametrize("T", range(1, 11))
    def test_strata_add_up(self, T):
        # x1 != 0 plus the x1 = 0 stratum, which is P(1,2) in the remaining coordinates
        full = count_points_rational("1,1,2", T).count
        open_part = count_points_rational("1,1,2", T, [0]).count
        stratum = count_points_rational("1,2", T).count
        assert open_part + stratum == full

    def test_sieve_agrees_on_open_set(self):
        for T in (3, 7):
            assert count_points_rational("1,1,2", T, [0, 2]).count == count_moebius_sieve(Q, "1,1,2", T, [0, 2]).count

    def test_quadratic_open(self):
        full = count_points_quadratic(QI, "1,1", 4).count
        opened = count_points_quadratic(QI, "1,1", 4, [0]).count
        assert full - opened == 1  # only [0:1]

    def test_bad_index(self):
        with pytest.raises(InputError):
            count_points_rational("1,1", 3, [2])


class TestExponentE:
    def test_exponent_two(self):
        for T in (1, 4, 10, 50, 200):
            a = count_points(Q, "1,1,2", T, e=2).count
            b = count_points_rational("1,1,2", Radical(T, 2)).count
            assert a == b


class TestProducts:
    def test_p1xp1_at_one(self):
        assert count_product(None, ["1,1", "1,1"], (2, 2), 1).count == 16

    def test_single_factor_reduces(self):
        for T in (1, 5, 17, 100):
            assert count_product(None, ["1,1"], (2,), T).count == count_points_rational("1,1", Radical(T, 2)).count

    def test_double_loop_oracle(self):
        pts = []
        for x in itertools.product(range(-4, 5), repeat=2):
            if any(x):
                pts.append(canonicalize(x, "1,1"))
        pts = {P.coords: size_exact(P) for P in pts}
        sizes = list(pts.values())
        for T in (4, 9, 16):
            want = sum(1 for s, t in itertools.product(sizes, repeat=2) if (s * t) ** 2 <= T)
            assert count_product(None, ["1,1", "1,1"], (2, 2), T).count == want

    def test_quadratic_products(self):
        hist = size_histogram(QI, "1,1", 3)
        want = sum(c1 * c2 for (s1, c1), (s2, c2) in itertools.product(hist, repeat=2) if s1 * s2 <= 3)
        assert count_product(QI, ["1,1", "1,1"], (1, 1), 3).count == want

    def test_open_constraint_in_product(self):
        full = count_product(None, ["1,1", "1,1"], (2, 2), 100).count
        opened = count_product(None, ["1,1", "1,1"], (2, 2), 100, [(1, 0)]).count
        assert opened < full

    def test_zero_divisor_entry_rejected(self):
        with pytest.raises(InputError):
            count_product(None, ["1,1", "1,1"], (2, 0), 10)

    def test_divisor_length_checked(self):
        with pytest.raises(InputError):
            CountQuery.make(None, ["1,1", "1,1"], (2,), 10)


class TestHistogram:
    def test_rational_matches_count(self):
        for W in ("1,1", "1,2", "1,1,2"):
            h = size_histogram(Q, W, 6)
            assert sum(c for _, c in h) == count_points_rational(W, 6).count
            assert [s for s, _ in h] == sorted(s for s, _ in h)

    def test_quadratic_matches_count(self):
        h = size_histogram(Q5, "1,1", 5)
        assert sum(c for _, c in h) == count_points_quadratic(Q5, "1,1", 5).count


class TestBudget:
    def test_budget_error(self):
        with pytest.raises(BudgetExceededError) as info:
            count_points_rational("1,1", 10**6, budget=10**6)
        assert info.value.required == (2 * 10**6 + 1) ** 2

    def test_quadratic_budget(self):
        with pytest.raises(BudgetExceededError):
            count_points_quadratic(QI, "1,1", 1000, budget=10**4)


class TestParallel:
    @pytest.mark.parametrize("workers", [2, 3, 8])
    def test_rational_deterministic(self, workers):
        for W, T in (("1,1", 300), ("1,1,2", 15), ("2,3", 40)):
            assert count_points_rational(W, T, workers=workers).count == count_points_rational(W, T).count

    def test_quadratic_deterministic(self):
        assert count_points_quadratic(Q5, "1,1", 12, workers=4).per_class == count_points_quadratic(Q5, "1,1", 12).per_class

    def test_histogram_deterministic(self):
        assert size_histogram(Q, "1,1,2", 8, workers=4) == size_histogram(Q, "1,1,2", 8)


class TestSweep:
    def test_grid(self):
        assert geometric_grid(1, 10, 2) == [1, 2, 4, 8]
        with pytest.raises(InputError):
            geometric_grid(1, 10, 1)

    def test_monotone(self):
        q = CountQuery.make(None, "1,1,2")
        series = sweep(q, (1, 20, Fraction(3, 2)))
        counts = series.counts()
        assert counts == sorted(counts)
        assert series.bounds()[0] == 1

    def test_rejects_non_increasing(self):
        with pytest.raises(InputError):
            sweep(CountQuery.make(None, "1,1"), [4, 2])


def test_content_filter_is_exact_for_nonprincipal_reps():
    # every enumerated tuple of the class-1 lattice has content exactly that rep
    A = Q5.class_reps[1]
    from wpscount.enumeration import _class_points
    from wpscount.weighted_space import weighted_content

    W = Weight((1, 1))
    for pairs, _ in _class_points(Q5, A, W, Radical(4), [False, False]):
        xs = [Q5.element(u, v) for u, v in pairs]
        assert weighted_content(xs, W, Q5) == A
