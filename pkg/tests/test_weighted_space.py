import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from wpscount.errors import InputError, NotWellFormedError
from wpscount.number_field import IdealRep, make_field
from wpscount.weighted_space import (
    DivisorClass,
    ProductPoint,
    Radical,
    Weight,
    act,
    anticanonical_divisor,
    canonicalize,
    h_infinity,
    is_well_formed,
    orbit_min_h_infinity,
    radical_product_le,
    require_well_formed,
    size,
    size_divisor,
    size_exact,
    size_of,
    weighted_content,
)

Q = make_field(None)
QI = make_field(1)
Q5 = make_field(5)


class TestRadical:
    def test_normalises_perfect_powers(self):
        r = Radical(8, 3)
        assert (r.value, r.root) == (2, 1)
        assert Radical(Fraction(4, 9), 2) == Fraction(2, 3)

    def test_exact_comparisons(self):
        assert Radical(2, 2) < Radical(3, 2) < 2
        assert Radical(2, 2) * Radical(2, 2) == 2
        assert not Radical(2, 2) < Radical(2, 2)

    @pytest.mark.parametrize("v,r,k", [(2, 2, 1), (1000, 3, 2), (Fraction(7, 3), 2, 4), (10**12 + 1, 2, 1)])
    def test_floor_pow(self, v, r, k):
        exact = Radical(v, r).floor_pow(k)
        assert exact**r <= Fraction(v) ** k < (exact + 1) ** r

    def test_float_of_huge_radicand(self):
        assert float(Radical(10**400, 100)) == pytest.approx(1e4)

    def test_product_le(self):
        assert radical_product_le([(Radical(2), 2), (Radical(3, 2), 2)], Radical(12))
        assert not radical_product_le([(Radical(2), 2), (Radical(3, 2), 2)], Radical(11))

    def test_negative_rejected(self):
        with pytest.raises(InputError):
            Radical(-1)


class TestWeight:
    @pytest.mark.parametrize("w,ok", [((1, 1, 2), True), ((2, 2, 3), False), ((2, 3, 5), True), ((1,), True), ((1, 2), False)])
    def test_is_well_formed(self, w, ok):
        assert is_well_formed(w) is ok

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            is_well_formed(())

    def test_overall_gcd_enforced(self):
        with pytest.raises(NotWellFormedError):
            Weight((2, 4))

    def test_require_well_formed_names_subset(self):
        with pytest.raises(NotWellFormedError, match=r"\(2,2\)"):
            require_well_formed("2,2,3")

    def test_accessors(self):
        W = Weight.parse("1,2,3")
        assert (W.m, W.total, W.w_min, W.lcm, str(W)) == (3, 6, 1, 6, "1,2,3")

    def test_parse_errors(self):
        for bad in ("", "1,,2", "1,0", "a,b", "-1,1"):
            with pytest.raises(InputError):
                Weight.parse(bad)

    def test_divisor(self):
        assert DivisorClass.parse("2,0").a == (2, 0)
        with pytest.raises(InputError):
            DivisorClass((0, 0))
        with pytest.raises(InputError):
            DivisorClass((1, -1))

    @pytest.mark.parametrize(
        "ws,expected", [(["1,1"], (2,)), (["1,1,2", "1,1"], (4, 2)), (["1,2,3"], (6,))]
    )
    def test_anticanonical(self, ws, expected):
        assert anticanonical_divisor([Weight.parse(w) for w in ws]).a == expected


class TestContent:
    def test_example_4_8_16(self):
        assert weighted_content((4, 8, 16), "1,1,2", Q) == IdealRep(Q, 4, 0, 1, 1)

    def test_unit_vector(self):
        for W in ("1,1", "1,1,2", "2,3,5"):
            m = Weight.parse(W).m
            assert weighted_content((1,) + (0,) * (m - 1), W, Q).is_unit()

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_ppp(self, p):
        assert weighted_content((p, p, p), "1,1,2", Q).is_unit()

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            weighted_content((0, 0), "1,1", Q)

    def test_rational_coordinates(self):
        # (1/2)_*(4,8,16) = (2,4,4); content scales by 1/2
        x = (Fraction(1, 2), 1, Fraction(1, 4))
        J = weighted_content(x, "1,1,2", Q)
        assert J.norm() == Fraction(1, 2)

    def test_gaussian(self):
        # v_(1+i): min(2, floor(4/2)) = 2
        x = (QI.element(2), QI.element(0, 4))
        assert weighted_content(x, "1,2", QI) == IdealRep.principal(QI.element(2))
        x = (QI.element(1, 1), QI.element(0, 4))
        assert weighted_content(x, "1,2", QI) == IdealRep.principal(QI.element(1, 1))


class TestSize:
    def test_h_infinity_examples(self):
        assert h_infinity((3, 4), "1,1", Q) == 4
        assert h_infinity((2, 2, 2), "1,1,2", Q) == 2
        assert h_infinity((QI.element(1, 1), QI.element(2)), "1,2", QI) == 2

    def test_size_examples(self):
        assert size(canonicalize((5, 5, 5), "1,1,2")) == 5
        m = 4
        assert size(canonicalize((0,) * (m - 1) + (1,), "1,1,2,3")) == 1
        assert size(canonicalize((4, 8, 16), "1,1,2")) == 2

    def test_ppp_size_squared(self):
        # Size^2 of (p,p,p) in P(1,1,2) is p^2
        for p in (2, 3, 11):
            assert size_exact(canonicalize((p, p, p), "1,1,2")) ** 2 == p * p

    def test_size_divisor(self):
        P = ProductPoint((canonicalize((3, 4), "1,1"), canonicalize((1, 2), "1,1")))
        assert size_divisor(P, (2, 2)) == 64
        assert size_divisor(P, anticanonical_divisor([Weight((1, 1))] * 2)) == 64
        ones = ProductPoint((canonicalize((1, 0), "1,1"), canonicalize((0, 1), "1,1")))
        assert size_divisor(ones, (5, 7)) == 1

    def test_size_divisor_mismatch(self):
        P = ProductPoint((canonicalize((3, 4), "1,1"),))
        with pytest.raises(InputError):
            size_divisor(P, (1, 1))

    def test_mixed_fields_rejected(self):
        with pytest.raises(InputError):
            ProductPoint((canonicalize((1, 1), "1,1"), canonicalize((1, 1), "1,1", QI)))


class TestCanonicalize:
    def test_examples(self):
        assert canonicalize((4, 8, 16), "1,1,2").integers() == (1, 2, 1)
        assert canonicalize((-3, 5), "1,1").integers() == (3, -5)
        assert canonicalize((0, 0, -7), "1,1,2").integers() == (0, 0, -7)

    def test_idempotent(self):
        for x in itertools.product(range(-4, 5), repeat=3):
            if not any(x):
                continue
            P = canonicalize(x, "1,1,2")
            assert canonicalize(P.coords, "1,1,2") == P

    def test_nonprincipal_class(self):
        P = canonicalize((Q5.element(2), Q5.element(1, 1)), "1,1", Q5)
        assert P.class_index == 1
        assert P.content == Q5.class_reps[1]
        assert size_exact(P) == size_of(P.coords, "1,1", Q5)

    def test_unit_orbit_collapses(self):
        x = (QI.element(1, 2), QI.element(3))
        base = canonicalize(x, "1,1", QI)
        for u in QI.roots_of_unity:
            assert canonicalize(act(u, x, Weight((1, 1))), "1,1", QI) == base

    @pytest.mark.parametrize("W", ["1,1", "1,1,2", "1,2,3"])
    def test_size_is_orbit_minimum(self, W):
        m = Weight.parse(W).m
        rng = range(-6, 7) if m == 3 else range(-20, 21)
        for x in itertools.product(rng, repeat=m):
            if not any(x) or (m == 3 and sum(map(abs, x)) % 3):  # thin the 3D box
                continue
            assert size_of(x, W, Q) == orbit_min_h_infinity(x, W)

    def test_specialises_to_projective_height(self):
        for x in itertools.product(range(-9, 10), repeat=3):
            if not any(x):
                continue
            g = math.gcd(*x)
            assert size_of(x, "1,1,1", Q) == max(map(abs, x)) // g


_nonzero_q = st.fractions(min_value=-50, max_value=50, max_denominator=12).filter(lambda q: q != 0)
_weights = st.sampled_from(["1,1", "1,2", "1,1,2", "1,2,3", "2,3", "2,3,5"])


@settings(max_examples=300, deadline=None)
@given(_weights, st.lists(st.integers(-60, 60), min_size=3, max_size=3), _nonzero_q)
def test_scaling_invariance_rational(W, raw, lam):
    W = Weight.parse(W)
    x = tuple(raw[: W.m])
    assume(any(x))
    y = act(Q.element(lam), [Q.element(c) for c in x], W)
    assert canonicalize(y, W, Q) == canonicalize(x, W, Q)
    assert size_of(y, W, Q) == size_of(x, W, Q)


@settings(max_examples=300, deadline=None)
@given(_weights, st.lists(st.integers(-60, 60), min_size=3, max_size=3), _nonzero_q)
def test_content_law_rational(W, raw, lam):
    W = Weight.parse(W)
    x = [Q.element(c) for c in raw[: W.m]]
    assume(any(not c.is_zero() for c in x))
    a = Q.element(lam)
    lhs = weighted_content(act(a, x, W), W, Q)
    rhs = weighted_content(x, W, Q) * IdealRep.principal(a)
    assert lhs == rhs


_gauss = st.tuples(st.integers(-12, 12), st.integers(-12, 12))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([1, 2, 5, 23]), st.sampled_from(["1,1", "1,2"]), st.lists(_gauss, min_size=2, max_size=2), _gauss)
def test_content_law_and_invariance_quadratic(d, W, raw, lam):
    F = make_field(d)
    W = Weight.parse(W)
    x = [F.element(u, v) for u, v in raw]
    assume(any(not c.is_zero() for c in x) and lam != (0, 0))
    a = F.element(*lam)
    y = act(a, x, W)
    assert weighted_content(y, W, F) == weighted_content(x, W, F) * IdealRep.principal(a)
    assert canonicalize(y, W, F) == canonicalize(x, W, F)
    assert size_of(y, W, F) == size_of(x, W, F)
