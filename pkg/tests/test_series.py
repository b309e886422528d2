import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codimkit.series import (
    EXPONENTIAL,
    ORDINARY,
    Sequence,
    SeriesError,
    TruncatedSeries,
    as_rational,
    binomial_pow_series,
    cauchy_product,
    compose_mobius,
    derivative,
    exp_series,
    hadamard_series,
    lr_product_seq,
    polynomial_series,
    to_exponential,
    to_ordinary,
)

from conftest import rational_lists

ones = Sequence([1] * 20)


def geo(q, N=20):
    return Sequence([F(q) ** n for n in range(N)])


class TestRationals:
    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(ValueError):
            as_rational("0.5")

    def test_strings(self):
        assert as_rational("-3/6") == F(-1, 2)


class TestSequence:
    def test_offset_indexing(self):
        s = Sequence([5, 6], offset=2)
        assert s[0] == 0 and s[2] == 5 and s[3] == 6
        with pytest.raises(IndexError):
            s[4]

    def test_json_roundtrip(self):
        s = Sequence([1, F(-2, 3), 7], offset=1)
        obj = s.to_json()
        assert obj == {"offset": 1, "terms": ["1", "-2/3", "7"]}
        assert Sequence.from_json(json.loads(json.dumps(obj))) == s

    def test_json_rejects_floats(self):
        with pytest.raises(ValueError):
            Sequence.from_json({"offset": 0, "terms": [1.5]})


class TestTransforms:
    def test_exponential_of_ones(self):
        assert to_exponential(ones, 4).coeffs == (1, 1, F(1, 2), F(1, 6))

    def test_exponential_of_cE(self):
        assert to_exponential(Sequence([1, 1, 2, 4]), 4).coeffs == (1, 1, 1, F(2, 3))

    def test_exponential_of_t(self):
        assert to_exponential(Sequence([0, 1, 0, 0]), 4).coeffs == (0, 1, 0, 0)

    def test_to_ordinary(self):
        assert to_ordinary(TruncatedSeries([1, 1, F(1, 2), F(1, 6)], EXPONENTIAL)) == [1, 1, 1, 1]
        e = (exp_series(0, 5) + exp_series(2, 5)) * F(1, 2)
        assert to_ordinary(e) == [1, 1, 2, 4, 8]

    @given(rational_lists())
    def test_roundtrip(self, xs):
        s = Sequence(xs)
        assert to_ordinary(to_exponential(s, len(xs))) == s


class TestCauchy:
    def test_geometric_square(self):
        g = polynomial_series([1] * 10, 10)
        assert cauchy_product(g, g).coeffs == tuple(range(1, 11))

    def test_exp_squared(self):
        assert cauchy_product(exp_series(1, 8), exp_series(1, 8)) == exp_series(2, 8)

    def test_one_minus_t_times_powers_of_two(self):
        out = cauchy_product(polynomial_series([1, -1], 8), TruncatedSeries(geo(2, 8).values()))
        assert out.coeffs == (1, 1, 2, 4, 8, 16, 32, 64)

    def test_kind_mismatch(self):
        with pytest.raises(SeriesError):
            cauchy_product(exp_series(1, 3), polynomial_series([1], 3))

    def test_order_is_minimum(self):
        assert cauchy_product(polynomial_series([1], 3), polynomial_series([1], 5)).order == 3


class TestLR:
    def test_examples(self):
        assert lr_product_seq(geo(2), geo(3), 15) == geo(5, 15).values()
        assert lr_product_seq(Sequence([0, 1] + [0] * 10), ones, 12) == list(range(12))
        assert lr_product_seq(ones, ones, 12) == geo(2, 12).values()

    @settings(max_examples=30)
    @given(rational_lists(12, 12), rational_lists(12, 12), rational_lists(12, 12))
    def test_commutative_associative(self, x, y, z):
        a, b, c = Sequence(x), Sequence(y), Sequence(z)
        assert lr_product_seq(a, b, 12) == lr_product_seq(b, a, 12)
        assert lr_product_seq(lr_product_seq(a, b, 12), c, 12) == lr_product_seq(a, lr_product_seq(b, c, 12), 12)

    @given(rational_lists(10, 10))
    def test_unit(self, x):
        delta = Sequence([1] + [0] * 9)
        assert lr_product_seq(Sequence(x), delta, 10) == x

    @settings(max_examples=30)
    @given(rational_lists(10, 10), rational_lists(10, 10), rational_lists(10, 10),
           st.integers(-5, 5), st.integers(-5, 5))
    def test_bilinear(self, x, y, z, p, q):
        a, b, c = Sequence(x), Sequence(y), Sequence(z)
        lin = Sequence([p * u + q * v for u, v in zip(x, y)])
        lhs = lr_product_seq(lin, c, 10).values()
        ac, bc = lr_product_seq(a, c, 10).values(), lr_product_seq(b, c, 10).values()
        assert lhs == [p * u + q * v for u, v in zip(ac, bc)]

    @settings(max_examples=30)
    @given(rational_lists(15, 15), rational_lists(15, 15))
    def test_matches_exponential_product(self, x, y):
        a, b = Sequence(x), Sequence(y)
        prod = cauchy_product(to_exponential(a, 15), to_exponential(b, 15))
        assert to_exponential(lr_product_seq(a, b, 15), 15) == prod


class TestHadamard:
    def test_examples(self):
        assert hadamard_series(geo(2, 10), geo(3, 10)) == geo(6, 10).values()
        s = Sequence([3, F(1, 2), -7, 0, 9])
        assert hadamard_series(s, ones) == s.values()
        n = Sequence(range(10))
        assert hadamard_series(n, n) == [k * k for k in range(10)]

    def test_offset(self):
        out = hadamard_series(Sequence([1, 2, 3], offset=1), ones)
        assert out.offset == 1 and out[3] == 3


class TestDerivative:
    def test_examples(self):
        assert derivative(polynomial_series([1] * 8, 8)).coeffs == tuple(range(1, 8))
        d = derivative(exp_series(2, 8))
        assert d == exp_series(2, 7) * 2
        assert derivative(polynomial_series([0, 0, 1], 5), 2).coeffs == (2, 0, 0)

    def test_exhausted(self):
        with pytest.raises(SeriesError):
            derivative(polynomial_series([1, 2], 2), 2)


class TestBinomialSeries:
    def test_sqrt(self):
        s = binomial_pow_series(F(1, 2), polynomial_series([0, -4], 6))
        assert s.coeffs == (1, -2, -2, -4, -10, -28)

    def test_geometric_and_square(self):
        assert binomial_pow_series(-1, polynomial_series([0, -1], 8)).coeffs == (1,) * 8
        assert binomial_pow_series(2, polynomial_series([0, 1], 5)).coeffs == (1, 2, 1, 0, 0)

    @given(rational_lists(8, 8))
    def test_square_root_squares_back(self, xs):
        u = TruncatedSeries([0] + xs)
        r = binomial_pow_series(F(1, 2), u)
        assert cauchy_product(r, r) == u + 1

    def test_nonzero_constant(self):
        with pytest.raises(SeriesError):
            binomial_pow_series(F(1, 2), polynomial_series([1, 1], 4))


class TestMobius:
    def test_geometric(self):
        N = 12
        b = polynomial_series([1] * N, N)
        # 1/(1 - t/(1-t)) = (1-t)/(1-2t)
        expect = [1] + [2 ** (n - 1) for n in range(1, N)]
        assert list(compose_mobius(b, 1).coeffs) == expect

    def test_t(self):
        assert compose_mobius(polynomial_series([0, 1], 8), 2).coeffs == (0, 1, 2, 4, 8, 16, 32, 64)

    def test_constant(self):
        assert compose_mobius(polynomial_series([1], 6), F(-3, 2)).coeffs == (1, 0, 0, 0, 0, 0)

    def test_alpha_zero_unchanged(self):
        b = polynomial_series([1, 2, 3], 5)
        assert compose_mobius(b, 0) == b
