import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpscount.errors import FactoringBoundError, InputError
from wpscount.number_field import (
    INFINITE_VALUATION,
    IdealRep,
    dedekind_zeta,
    dedekind_zeta_with_error,
    element_valuation,
    factor_ideal,
    factor_integer,
    ideal_class_index,
    ideal_norm,
    integral_ideals_of_norm,
    integral_ideals_up_to,
    is_principal,
    kronecker,
    make_field,
    moebius_ideal,
    moebius_table,
    parse_element,
    parse_field_spec,
    primes_above,
    principal_generator,
    reduced_forms,
)

Q = make_field(None)
QI = make_field(1)
Q5 = make_field(5)
FIELDS = [Q, QI, make_field(2), make_field(3), Q5, make_field(23)]


class TestFieldData:
    def test_rational_invariants(self):
        assert (Q.disc, Q.r1, Q.r2, Q.h, Q.w, Q.R) == (1, 1, 0, 1, 2, 1)

    def test_gaussian_invariants(self):
        assert (QI.disc, QI.r1, QI.r2, QI.h, QI.w, QI.R) == (4, 0, 1, 1, 4, 1)

    def test_sqrt_minus_5(self):
        assert Q5.disc == 20 and Q5.h == 2
        assert reduced_forms(20) == [(1, 0, 5), (2, 2, 3)]

    @pytest.mark.parametrize("d,h", [(1, 1), (2, 1), (3, 1), (5, 2), (6, 2), (14, 4), (23, 3), (47, 5), (71, 7)])
    def test_class_numbers(self, d, h):
        assert make_field(d).h == h

    @pytest.mark.parametrize("d,w", [(1, 4), (3, 6), (2, 2), (7, 2)])
    def test_unit_counts(self, d, w):
        F = make_field(d)
        assert F.w == w == len(F.roots_of_unity)
        assert F.roots_of_unity[0] == F.one()
        assert all(u.norm() == 1 for u in F.roots_of_unity)

    @pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
    def test_class_reps_distinct(self, F):
        assert F.class_reps[0].is_unit()
        idx = [ideal_class_index(A) for A in F.class_reps]
        assert idx == list(range(F.h))
        for A in F.class_reps[1:]:
            assert not is_principal(A)

    def test_rejects_non_squarefree(self):
        with pytest.raises(InputError):
            make_field(4)

    @pytest.mark.parametrize("spec,d", [("Q", 0), ("Q(i)", 1), ("Q(sqrt(-5))", 5), ("-23", 23), (7, 7)])
    def test_parse_field_spec(self, spec, d):
        assert parse_field_spec(spec).d == d

    def test_parse_garbage(self):
        with pytest.raises(InputError):
            parse_field_spec("Q(cuberoot 2)")


class TestIntegers:
    def test_factor(self):
        assert factor_integer(360) == {2: 3, 3: 2, 5: 1}

    def test_factor_bound(self):
        with pytest.raises(FactoringBoundError):
            factor_integer(1000003 * 1000033, bound=1000)

    def test_moebius_table(self):
        mu = moebius_table(12)
        assert list(mu[1:]) == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]

    @pytest.mark.parametrize("a,n,v", [(-4, 3, -1), (-4, 5, 1), (-20, 3, 1), (-20, 7, 1), (-20, 11, -1), (-4, 2, 0)])
    def test_kronecker(self, a, n, v):
        assert kronecker(a, n) == v


class TestIdeals:
    def test_norm_examples(self):
        assert ideal_norm(QI.unit_ideal()) == 1
        p2 = IdealRep.from_generators(Q5, [Q5.element(2), Q5.element(1, 1)])
        assert ideal_norm(p2) == 2
        assert ideal_norm(IdealRep.principal(QI.element(3))) == 9

    def test_factor_six_gaussian(self):
        fac = factor_ideal(IdealRep.principal(QI.element(6)))
        one_plus_i = IdealRep.principal(QI.element(1, 1))
        three = IdealRep.principal(QI.element(3))
        assert sorted(fac, key=lambda t: t[0].norm()) == [(one_plus_i, 2), (three, 1)]

    def test_two_ramifies_in_q5(self):
        p2 = IdealRep.from_generators(Q5, [Q5.element(2), Q5.element(1, 1)])
        assert factor_ideal(IdealRep.principal(Q5.element(2))) == [(p2, 2)]
        assert not is_principal(p2)

    def test_unit_ideal_factorization(self):
        assert factor_ideal(Q5.unit_ideal()) == []

    def test_moebius_examples(self):
        assert moebius_ideal(QI.unit_ideal()) == 1
        assert moebius_ideal(IdealRep.principal(QI.element(1, 1)) ** 2) == 0
        assert moebius_ideal(IdealRep.principal(Q.element(6))) == 1

    @pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
    def test_factor_round_trip(self, F):
        for I in integral_ideals_up_to(F, 500 if F.is_rational else 200):
            prod = F.unit_ideal()
            for P, e in factor_ideal(I):
                fac = factor_integer(int(P.norm()))
                assert len(fac) == 1 and max(fac.values()) <= 2
                prod = prod * P**e
            assert prod == I

    @pytest.mark.parametrize("F", FIELDS[1:], ids=lambda F: F.name)
    def test_moebius_dirichlet_identity(self, F):
        ideals = list(integral_ideals_up_to(F, 120))
        for J in ideals:
            s = sum(moebius_ideal(I) for I in ideals if I.norm() <= J.norm() and I.divides(J))
            assert s == (1 if J.is_unit() else 0)

    @pytest.mark.parametrize("F", FIELDS[1:], ids=lambda F: F.name)
    def test_ideal_count_matches_dirichlet_coefficients(self, F):
        # number of ideals of norm n is sum_{k | n} chi(k)
        for n in range(1, 60):
            expected = sum(kronecker(-F.disc, k) for k in range(1, n + 1) if n % k == 0)
            assert len(integral_ideals_of_norm(F, n)) == expected

    def test_inverse_and_division(self):
        for A in Q5.class_reps + make_field(23).class_reps:
            assert (A * A.inverse()).is_unit()
            assert A / A == A.field.unit_ideal()

    def test_principal_generator(self):
        I = IdealRep.principal(QI.element(3, 4))
        g = principal_generator(I)
        assert g is not None and IdealRep.principal(g) == I
        assert principal_generator(Q5.class_reps[1]) is None

    def test_primes_above_large_p(self):
        ps = primes_above(QI, 1009)  # 1009 = 1 mod 4 splits
        assert len(ps) == 2 and all(P.norm() == 1009 for P in ps)

    def test_valuation_sentinel(self):
        P = primes_above(QI, 5)[0]
        assert element_valuation(QI.element(0), P) is INFINITE_VALUATION
        assert element_valuation(QI.element(25), P) == 2
        assert element_valuation(QI.element(Fraction(1, 5)), P) == -1


def _ideal_strategy(F):
    return st.integers(1, 60).flatmap(lambda n: st.sampled_from(integral_ideals_of_norm(F, n) or [F.unit_ideal()]))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_norm_multiplicative(data):
    F = data.draw(st.sampled_from(FIELDS))
    I = data.draw(_ideal_strategy(F))
    J = data.draw(_ideal_strategy(F))
    assert (I * J).norm() == I.norm() * J.norm()
    assert (I * J.inverse()).norm() == I.norm() / J.norm()


class TestZeta:
    def test_riemann_values(self):
        assert dedekind_zeta(Q, 2) == pytest.approx(math.pi**2 / 6, abs=1e-10)
        assert dedekind_zeta(Q, 4) == pytest.approx(math.pi**4 / 90, abs=1e-10)

    def test_gaussian_against_catalan(self):
        # zeta_{Q(i)}(2) = zeta(2) * Catalan's constant
        assert dedekind_zeta(QI, 2) == pytest.approx(float(mpmath.zeta(2) * mpmath.catalan), abs=1e-9)

    @pytest.mark.parametrize("F", [QI, Q5, make_field(23)], ids=lambda F: F.name)
    def test_against_ideal_sum(self, F):
        N0 = 3000
        direct = sum(len(integral_ideals_of_norm(F, n)) / n**3 for n in range(1, N0 + 1))
        tail = 2 * N0**-1.5 / 1.5  # at most d(n) <= 2 sqrt(n) ideals of norm n
        value, err = dedekind_zeta_with_error(F, 3, 1e-10)
        assert abs(value - direct) <= tail + err + 1e-12

    def test_error_within_tolerance(self):
        v, e = dedekind_zeta_with_error(Q5, 2, 1e-8)
        assert e <= 1e-8

    def test_rejects_bad_tol(self):
        with pytest.raises(InputError):
            dedekind_zeta(Q, 2, tol=0)


def test_parse_element_round_trip():
    x = parse_element(QI, "1+2w")
    assert str(x) == "1+2w"
    assert x.norm() == 5
