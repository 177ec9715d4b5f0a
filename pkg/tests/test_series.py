from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monstertower.errors import (
    IndeterminateValuation,
    InsufficientPrecision,
    NegativeValuation,
    ParseError,
)
from monstertower.series import TruncatedSeries, parse_series


def S(text, precision=64):
    return parse_series(text, precision)


def naive_product(a, b, n):
    # independent convolution oracle
    out = [F(0)] * n
    for i, ca in enumerate(a.coefficients):
        for j, cb in enumerate(b.coefficients):
            if i + j < n:
                out[i + j] += ca * cb
    return tuple(out)


class TestArith:
    def test_cancellation(self):
        r = S("t^4 + t^5") - S("t^4")
        assert r.agrees_with(S("t^5"))
        assert r.valuation() == 5

    def test_monomial_product(self):
        assert (S("t^2") * S("t^3")).agrees_with(S("t^5"))

    def test_shifted_product_matches_convolution_oracle(self):
        a, b = S("t^24"), S("1 + t")
        prod = a * b
        assert prod.coefficients == naive_product(a, b, prod.precision)
        assert prod.agrees_with(S("t^24 + t^25"))

    def test_mul_precision_bound(self):
        prod = S("t^24") * S("1 + t")
        assert prod.precision == 64  # min(64 + 0, 64 + 24)


class TestDerivative:
    def test_monomial(self):
        assert S("t^7").derivative().agrees_with(S("7*t^6"))

    def test_binomial_with_coefficient(self):
        d = S("14*t^18 + 14*t^19").derivative()
        assert d.agrees_with(S("252*t^17 + 266*t^18"))
        # 14*(18 t^17 + 19 t^18)
        assert d.coefficients[17] == 14 * 18
        assert d.coefficients[18] == 14 * 19

    def test_constant(self):
        d = S("5").derivative()
        assert d.valuation_or_none() is None

    def test_empty_window(self):
        with pytest.raises(InsufficientPrecision):
            TruncatedSeries(()).derivative()


class TestQuotient:
    def test_monomials(self):
        q = S("7*t^6").quotient(S("5*t^4"))
        assert q.agrees_with(S("7/5*t^2"))

    def test_ramphoid_chart_quotient(self):
        # dx / dy'' for x = t^2, y'' = 2 + 15/4 t
        q = S("t^2").derivative().quotient(S("2 + 15/4*t").derivative())
        assert q.agrees_with(S("8/15*t"))

    def test_self_quotient(self):
        s = S("3*t^2 + t^5")
        assert s.quotient(s).agrees_with(S("1"))

    def test_negative_valuation(self):
        with pytest.raises(NegativeValuation):
            S("t^2").quotient(S("t^3"))

    def test_zero_denominator(self):
        with pytest.raises(IndeterminateValuation):
            S("t").quotient(TruncatedSeries.zero(8))

    def test_zero_numerator_allowed(self):
        q = TruncatedSeries.zero(8).quotient(S("1 + t", 8))
        assert q.valuation_or_none() is None

    def test_precision_tracking(self):
        q = S("t^4", 10).quotient(S("t^2", 10))
        assert q.precision == 8


class TestValuation:
    def test_monomial(self):
        assert S("t^15").valuation() == 15

    def test_unit(self):
        assert S("1 + t").valuation() == 0

    def test_rational_function_restriction(self):
        # 14 t^10 / (72 + 95 t) has order 10
        q = S("14*t^10").quotient(S("72 + 95*t"))
        assert q.valuation() == 10

    def test_indeterminate(self):
        with pytest.raises(IndeterminateValuation):
            TruncatedSeries.zero(4).valuation()


class TestRecenter:
    def test_with_constant(self):
        c, tail = S("2 + 15/4*t").recenter()
        assert c == 2
        assert tail.agrees_with(S("15/4*t"))

    def test_pure_power(self):
        c, tail = S("t^3").recenter()
        assert c == 0
        assert tail.agrees_with(S("t^3"))

    def test_unit_shift(self):
        c, tail = S("1 + t").recenter()
        assert (c, tail.valuation()) == (1, 1)


class TestIntegrate:
    def test_double_integration_example(self):
        # actives y' = t, x'' = t in chart oio rebuild to x = t^3/6, y = t^4/8
        y_prime, x_second = S("t"), S("t")
        x_prime = x_second.integrate(y_prime, 0)
        x = x_prime.integrate(y_prime, 0)
        assert x.agrees_with(S("1/6*t^3"))
        y = y_prime.integrate(x, 0)
        assert y.agrees_with(S("1/8*t^4"))

    def test_integrate_zero(self):
        r = TruncatedSeries.zero(8).integrate(S("t", 8), F(5))
        assert r.constant_term() == 5
        assert r.coefficients[1:] == (F(0),) * (r.precision - 1)

    def test_derivative_round_trip(self):
        a, wrt = S("7/5*t^2"), S("t^5")
        r = a.integrate(wrt, 0)
        assert r.agrees_with(S("t^7"))
        assert r.derivative().agrees_with(a * wrt.derivative())

    def test_indeterminate_wrt(self):
        with pytest.raises(IndeterminateValuation):
            S("t").integrate(TruncatedSeries.zero(8), 0)


coeffs = st.fractions(min_value=-40, max_value=40, max_denominator=9)


def series_strategy(min_val=0):
    return st.lists(coeffs, min_size=0, max_size=6).map(
        lambda cs: TruncatedSeries.from_terms(
            [(c, i + min_val) for i, c in enumerate(cs)], 24
        )
    )


class TestProperties:
    @given(series_strategy(), series_strategy())
    @settings(max_examples=120, deadline=None)
    def test_valuation_additivity(self, a, b):
        va, vb = a.valuation_or_none(), b.valuation_or_none()
        if va is None or vb is None:
            return
        assert (a * b).valuation() == va + vb

    @given(series_strategy(), series_strategy(min_val=1))
    @settings(max_examples=120, deadline=None)
    def test_quotient_multiply_round_trip(self, a, b):
        va, vb = a.valuation_or_none(), b.valuation_or_none()
        if vb is None or (va is not None and va < vb):
            return
        q = a.quotient(b)
        assert (q * b).agrees_with(a)

    @given(series_strategy(), series_strategy(min_val=1))
    @settings(max_examples=120, deadline=None)
    def test_integrate_derivative_identity(self, a, wrt):
        if wrt.valuation_or_none() is None:
            return
        r = a.integrate(wrt, F(3, 7))
        assert r.constant_term() == F(3, 7)
        assert r.derivative().agrees_with(a * wrt.derivative())

    @given(series_strategy(), series_strategy())
    @settings(max_examples=60, deadline=None)
    def test_product_matches_convolution_oracle(self, a, b):
        prod = a * b
        assert prod.coefficients == naive_product(a, b, prod.precision)

    def test_determinism(self):
        runs = [
            S("t^7").derivative().quotient(S("t^5").derivative()).coefficients
            for _ in range(2)
        ]
        assert runs[0] == runs[1]


class TestParse:
    @pytest.mark.parametrize(
        "text,expect",
        [
            ("7/5*t^2 + t^3", [(F(7, 5), 2), (F(1), 3)]),
            ("14*t^18+14*t^19", [(F(14), 18), (F(14), 19)]),
            ("2 + 15/4 * t", [(F(2), 0), (F(15, 4), 1)]),
            ("t", [(F(1), 1)]),
            ("-t^2 + 3", [(F(-1), 2), (F(3), 0)]),
        ],
    )
    def test_literals(self, text, expect):
        assert parse_series(text).agrees_with(TruncatedSeries.from_terms(expect))

    @pytest.mark.parametrize("bad", ["", "q^2", "t^", "1//2*t", "t^2 ^3"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_series(bad)

    def test_polynomials_embed_at_full_precision(self):
        assert parse_series("t^2", 50).precision == 50
