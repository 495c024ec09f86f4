from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critmap.poly import (
    ContextError,
    InexactDivisionError,
    SparsePoly,
    deleted_product,
    discriminant_square_product,
    divide_linear_difference,
    format_rational,
    parse_rational,
    partial_derivative,
    poly_arith,
    substitute,
)

NV = 4  # x, a1, a2, a3


def a(i, nv=NV):
    return SparsePoly.var(nv, i)


X = SparsePoly.var(NV, 0)


coeffs = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
)
exponents = st.tuples(*[st.integers(0, 3)] * NV)
polys = st.dictionaries(exponents, coeffs, max_size=6).map(lambda t: SparsePoly(NV, t))
variables = st.integers(0, NV - 1)


class TestRationals:
    def test_canonical_text(self):
        assert format_rational(Fraction(-3, 4)) == "-3/4"
        assert format_rational(Fraction(7, 1)) == "7"
        assert format_rational(Fraction(6, -8)) == "-3/4"

    @pytest.mark.parametrize("text,value", [("3", 3), ("-2", -2), ("1/2", Fraction(1, 2)), ("4/-1", None)])
    def test_parse(self, text, value):
        if value is None:
            with pytest.raises(ValueError):
                parse_rational(text)
        else:
            assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["0.5", "1/0", "", "a", "1e3"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    @given(st.fractions())
    def test_text_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestArithmetic:
    def test_binomial_square(self):
        d = a(1) - a(2)
        assert poly_arith(d, d, "mul") == a(1) ** 2 - 2 * a(1) * a(2) + a(2) ** 2

    def test_add_zero(self):
        p = a(1) * 3 - X
        assert poly_arith(p, SparsePoly.zero(NV), "add") == p

    def test_expansion(self):
        got = poly_arith(X - a(1), X - a(2), "mul")
        assert got == X**2 - (a(1) + a(2)) * X + a(1) * a(2)

    def test_context_mismatch(self):
        with pytest.raises(ContextError):
            a(1) + SparsePoly.var(3, 1)

    def test_no_zero_terms(self):
        p = (a(1) - a(2)) + (a(2) - a(1))
        assert p.is_zero() and p.terms == {}

    @given(polys, polys)
    def test_commutative(self, p, q):
        assert p + q == q + p
        assert p * q == q * p

    @given(polys, polys, polys)
    @settings(max_examples=50)
    def test_distributive(self, p, q, r):
        assert p * (q + r) == p * q + p * r

    @given(polys, polys)
    def test_degree_of_product(self, p, q):
        if p.is_zero() or q.is_zero():
            assert (p * q).is_zero()
        else:
            assert (p * q).total_degree() == p.total_degree() + q.total_degree()

    @given(polys)
    def test_text_round_trip(self, p):
        assert SparsePoly.parse(NV, str(p)) == p

    def test_grlex_printing(self):
        # a2 > a1 > x within each degree
        assert str(a(1) ** 2 - 2 * a(1) * a(2) + a(2) ** 2) == "a2^2 - 2*a1*a2 + a1^2"
        assert str(X * Fraction(-1, 2) + 3) == "-1/2*x + 3"


class TestCalculus:
    def test_derivative_is_minus_cofactor(self):
        f = (X - a(1)) * (X - a(2))
        assert partial_derivative(f, 1) == -(X - a(2))

    def test_independent_variable(self):
        assert partial_derivative(a(1) ** 2, 2).is_zero()

    def test_square_derivative(self):
        p = (a(2) - a(1)) ** 2
        assert partial_derivative(p, 1) == -2 * (a(2) - a(1))

    def test_out_of_range(self):
        with pytest.raises(ContextError):
            partial_derivative(a(1), NV)

    @given(polys, variables, variables)
    def test_mixed_partials_commute(self, p, u, v):
        assert p.diff(u).diff(v).terms == p.diff(v).diff(u).terms

    @pytest.mark.parametrize("n", range(1, 7))
    def test_deleted_factor_is_negative_partial(self, n):
        f = deleted_product(n)
        for k in range(1, n + 1):
            assert f.diff(k) == -deleted_product(n, {k})


class TestSubstitution:
    def test_cancellation(self):
        assert substitute(a(1) - a(2), 2, a(1)).is_zero()

    def test_full_evaluation(self):
        f = (X - a(1)) * (X - a(2))
        assert f.evaluate({0: 2, 1: 0, 2: 1}).constant_value() == 2

    def test_root_annihilates(self):
        f = (X - a(1)) * (X - a(2)) * (X - a(3))
        assert substitute(f, 0, a(1)).is_zero()

    def test_polynomial_value(self):
        p = X**2 + a(1)
        assert p.subs(0, a(2) + 1) == a(2) ** 2 + 2 * a(2) + 1 + a(1)

    @given(polys, polys, st.integers(-3, 3), st.integers(-3, 3))
    @settings(max_examples=50)
    def test_evaluation_is_a_homomorphism(self, p, q, u, v):
        point = {0: u, 1: v, 2: 1, 3: Fraction(1, 2)}
        lhs = (p * q).evaluate(point).constant_value()
        assert lhs == p.evaluate(point).constant_value() * q.evaluate(point).constant_value()

    @given(polys, st.integers(-3, 3))
    def test_subs_matches_evaluate(self, p, c):
        assert p.subs(2, c) == p.evaluate({2: c})


class TestDeletedProduct:
    def test_f3(self):
        nv = 4
        x, a1, a2 = SparsePoly.var(nv, 0), SparsePoly.var(nv, 1), SparsePoly.var(nv, 2)
        assert deleted_product(3, {3}) == (x - a1) * (x - a2)

    def test_nothing_deleted(self):
        nv = 4
        f = 1
        for m in range(1, 4):
            f = (SparsePoly.var(nv, 0) - SparsePoly.var(nv, m)) * f
        assert deleted_product(3) == f

    def test_profile(self):
        nv = 3
        assert deleted_product([2, 1], {2}) == (SparsePoly.var(nv, 0) - SparsePoly.var(nv, 1)) ** 2

    @pytest.mark.parametrize("mults,deleted", [([1, 1, 1], {2}), ([3, 2, 1], {1}), ([2, 2, 1, 1], {2, 4})])
    def test_monic_with_expected_degree(self, mults, deleted):
        p = deleted_product(mults, deleted)
        deg = sum(mults) - sum(mults[m - 1] for m in deleted)
        assert p.degree(0) == deg
        assert p.coefficient(0, deg) == SparsePoly.constant(p.nvars, 1)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            deleted_product(3, {4})


class TestLinearDivision:
    def test_difference_of_squares(self):
        q, ok = divide_linear_difference(a(1) ** 2 - a(2) ** 2, 1, 2)
        assert ok and q == a(1) + a(2)

    def test_not_divisible(self):
        _, ok = divide_linear_difference(a(1) + a(2), 1, 2)
        assert not ok

    def test_twice(self):
        p = -2 * (a(1) - a(2)) ** 2
        q, ok = divide_linear_difference(p, 1, 2)
        assert ok
        q, ok = divide_linear_difference(q, 1, 2)
        assert ok and q == SparsePoly.constant(NV, -2)

    def test_equal_indices(self):
        with pytest.raises(ValueError):
            divide_linear_difference(a(1), 1, 1)

    @given(polys, st.sampled_from([(1, 2), (2, 1), (1, 3), (3, 2)]))
    def test_round_trip(self, p, pair):
        i, j = pair
        product = p * (a(i) - a(j))
        q, ok = divide_linear_difference(product, i, j)
        assert ok and q * (a(i) - a(j)) == product

    @given(polys)
    def test_remainder_is_substitution(self, p):
        q, ok = divide_linear_difference(p, 1, 3)
        assert ok == p.subs(1, a(3)).is_zero()
        if ok:
            assert q * (a(1) - a(3)) == p


class TestExactDivision:
    @given(polys, polys)
    @settings(max_examples=60)
    def test_round_trip(self, p, q):
        if q.is_zero():
            return
        assert (p * q).exact_div(q) == p

    def test_inexact(self):
        with pytest.raises(InexactDivisionError):
            (a(1) ** 2 + 1).exact_div(a(1) - a(2))

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            a(1).exact_div(SparsePoly.zero(NV))


class TestDiscriminant:
    def test_pair(self):
        assert discriminant_square_product({1, 2}) == (SparsePoly.var(3, 1) - SparsePoly.var(3, 2)) ** 2

    def test_single(self):
        assert discriminant_square_product({1}) == SparsePoly.constant(2, 1)

    def test_three(self):
        d = discriminant_square_product({1, 2, 3})
        b = [SparsePoly.var(4, i) for i in range(4)]
        assert d == ((b[1] - b[2]) * (b[1] - b[3]) * (b[2] - b[3])) ** 2
        assert d.total_degree() == 6

    @pytest.mark.parametrize("perm", [{1: 2, 2: 1}, {1: 3, 3: 1}, {1: 2, 2: 3, 3: 1}])
    def test_permutation_invariant(self, perm):
        d = discriminant_square_product({1, 2, 3})
        assert d.rename(perm) == d

    def test_empty(self):
        with pytest.raises(ValueError):
            discriminant_square_product(set())
