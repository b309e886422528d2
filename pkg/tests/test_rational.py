import random
from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codimkit.polynomial import Polynomial
from codimkit.rational import (
    ExpPolySum,
    IrreducibleFactorError,
    LinearRecurrence,
    QuasiPolynomial,
    RationalFunction,
    expand_rational,
    exppoly_expand,
    exppoly_mul,
    exppoly_to_rational,
    fraction_power_as_lr_combination,
    geometric,
    hadamard_rational,
    lr_fraction,
    lr_fraction_rational,
    lr_monomial,
    lr_product_rational,
    quasipolynomial_to_exppoly,
    rational_to_exppoly,
    rational_to_quasipolynomial,
    reconstruct_rational,
    recurrence_to_rational,
    verify_ode,
)
from codimkit.series import (
    Sequence,
    SeriesError,
    cauchy_product,
    hadamard_series,
    lr_product_seq,
    ordinary_series,
    polynomial_series,
    to_ordinary,
)

T = Polynomial([0, 1])
cE = RationalFunction([1, -1], [1, -2])
small = st.builds(F, st.integers(-3, 3), st.integers(1, 2))


@st.composite
def rational_functions(draw, max_den=3, max_num=3):
    dd = draw(st.integers(0, max_den))
    den = [1] + [draw(small) for _ in range(dd)]
    num = [draw(small) for _ in range(draw(st.integers(1, max_num + 1)))]
    if not any(num):
        num[0] = F(1)
    return RationalFunction(num, den)


class TestRationalFunction:
    def test_normalization(self):
        r = RationalFunction([2, -2], [2, -6, 4])  # 2(1-t) / (2(1-t)(1-2t))
        assert r == RationalFunction([1], [1, -2])
        assert r.den[0] == 1

    def test_pole_at_zero(self):
        with pytest.raises(SeriesError):
            RationalFunction([1], [0, 1])

    def test_expand_examples(self):
        assert expand_rational(cE, 6) == [1, 1, 2, 4, 8, 16]
        assert expand_rational(geometric(1), 10) == [1] * 10
        r = RationalFunction(Polynomial.monomial(4, 2), Polynomial([1, -1]) ** 5)
        assert expand_rational(r, 7) == [0, 0, 0, 0, 2, 10, 30]

    def test_json(self):
        assert RationalFunction.from_json(cE.to_json()) == cE
        assert cE.to_json() == {"num": ["1", "-1"], "den": ["1", "-2"]}


class TestRecurrences:
    def test_examples(self):
        assert recurrence_to_rational(LinearRecurrence([2], [1])) == geometric(2)
        assert recurrence_to_rational(LinearRecurrence([2], [1, 1], start=1)) == cE
        fib = recurrence_to_rational(LinearRecurrence([1, 1], [0, 1]))
        assert fib == RationalFunction([0, 1], [1, -1, -1])

    def test_json(self):
        rec = LinearRecurrence([1, F(-1, 2)], [3, 0, 1], start=1)
        assert LinearRecurrence.from_json(rec.to_json()) == rec

    @settings(max_examples=40)
    @given(st.integers(0, 5), st.integers(0, 3), st.data())
    def test_roundtrip(self, k, n0, data):
        coeffs = [data.draw(small) for _ in range(k)]
        initial = [data.draw(small) for _ in range(k + n0)]
        rec = LinearRecurrence(coeffs, initial, n0)
        assert expand_rational(recurrence_to_rational(rec), 30) == rec.terms(30)


class TestQuasiPolynomial:
    def test_examples(self):
        q = rational_to_quasipolynomial(geometric(2))
        assert q.threshold == 0 and q.parts == ((2, Polynomial([1])),)
        q = rational_to_quasipolynomial(RationalFunction([0, 1], [1, -2, 1]))
        assert q.parts == ((1, Polynomial([0, 1])),)

    def test_irrational_roots(self):
        with pytest.raises(IrreducibleFactorError) as info:
            rational_to_quasipolynomial(RationalFunction([1], [1, -1, -1]))
        assert info.value.factor.degree == 2

    def test_threshold(self):
        r = RationalFunction([1, 0, 0, 5], [1, -3])
        q = rational_to_quasipolynomial(r)
        assert q.threshold == 3
        assert q.terms(15) == expand_rational(r, 15)

    @settings(max_examples=40)
    @given(st.lists(st.sampled_from([1, 2, -1, 3, F(1, 2)]), min_size=1, max_size=4), st.data())
    def test_matches_expansion(self, roots, data):
        den = Polynomial([1])
        for a in roots:
            den = den * Polynomial([1, -a])
        num = [data.draw(small) for _ in range(data.draw(st.integers(1, 6)))]
        if not any(num):
            num[0] = F(1)
        r = RationalFunction(num, den)
        assert rational_to_quasipolynomial(r).terms(25) == expand_rational(r, 25)


class TestExpPoly:
    def test_examples(self):
        assert quasipolynomial_to_exppoly(QuasiPolynomial([(2, [1])])) == ExpPolySum.exp(2)
        assert quasipolynomial_to_exppoly(QuasiPolynomial([(1, [0, 1])])) == ExpPolySum.exp(1, [0, 1])
        # c_n(E) = 2^n / 2 for n >= 1, c_0 = 1
        q = QuasiPolynomial([(2, [F(1, 2)])], threshold=1, initial=[1])
        assert quasipolynomial_to_exppoly(q) == ExpPolySum([(0, [F(1, 2)]), (2, [F(1, 2)])])

    def test_expand_examples(self):
        half = ExpPolySum([(0, [F(1, 2)]), (2, [F(1, 2)])])
        assert to_ordinary(exppoly_expand(half, 5)) == [1, 1, 2, 4, 8]
        derived = ExpPolySum([(2, [-1, 1]), (1, [2])])
        assert derived.terms(6) == [1, 1, 2, 6, 18, 50]
        shifted = ExpPolySum([(3, [1]), (2, [-1]), (1, [2])])
        assert shifted.terms(5) == [2, 3, 7, 21, 67]

    def test_mul_examples(self):
        assert exppoly_mul(ExpPolySum.exp(1), ExpPolySum.exp(1)) == ExpPolySum.exp(2)
        assert exppoly_mul(ExpPolySum.exp(1, [0, 1]), ExpPolySum.exp(-1, [0, 1])) == ExpPolySum.poly([0, 0, 1])
        half = ExpPolySum([(0, [F(1, 2)]), (2, [F(1, 2)])])
        assert half * half == ExpPolySum([(0, [F(1, 4)]), (2, [F(1, 2)]), (4, [F(1, 4)])])

    def test_coefficient_matches_expansion(self):
        e = ExpPolySum([(3, [1, -2, F(1, 3)]), (F(-1, 2), [0, 0, 4]), (0, [7])])
        assert [e.coefficient(n) for n in range(15)] == e.terms(15).values()

    def test_mul_vs_cauchy(self):
        a = ExpPolySum([(1, [1, 2]), (-2, [F(1, 3)])])
        b = ExpPolySum([(F(1, 2), [0, 1, 1]), (0, [5])])
        assert exppoly_expand(a * b, 14) == cauchy_product(exppoly_expand(a, 14), exppoly_expand(b, 14))

    @settings(max_examples=25)
    @given(rational_functions())
    def test_rational_exppoly_roundtrip(self, r):
        try:
            e = rational_to_exppoly(r)
        except IrreducibleFactorError:
            return
        assert e.terms(20) == expand_rational(r, 20)
        assert exppoly_to_rational(e) == r

    def test_annihilator(self):
        e = ExpPolySum([(2, [0, 1]), (-1, [3])])
        op = e.annihilator()
        assert verify_ode(e, op.coeffs, 20)


class TestLRRational:
    def test_examples(self):
        assert lr_product_rational(geometric(2), geometric(3)) == geometric(5)
        assert lr_product_rational(geometric(1), geometric(1)) == geometric(2)
        r = lr_product_rational(cE, cE)
        c = expand_rational(cE, 40)
        assert expand_rational(r, 40) == lr_product_seq(c, c, 40)

    @settings(max_examples=20, deadline=None)
    @given(rational_functions(), rational_functions())
    def test_matches_sequence_product(self, a, b):
        r = lr_product_rational(a, b)
        assert expand_rational(r, 40) == lr_product_seq(expand_rational(a, 40), expand_rational(b, 40), 40)

    def test_polynomial_parts_in_bound(self):
        a, b = RationalFunction([0, 0, 1]), RationalFunction([0, 1], [1, 1])
        r = lr_product_rational(a, b)
        assert r.num.degree == 5 and r.den.degree == 3

    def test_reconstruction_recovers_known(self):
        r = RationalFunction([1, 2, -1], [1, -1, F(1, 3)])
        assert reconstruct_rational(expand_rational(r, 20), 3) == r


class TestLROperators:
    N = 20

    def test_lr_fraction_examples(self):
        b = ordinary_series(expand_rational(geometric(3), self.N), self.N)
        assert to_ordinary(lr_fraction(2, b)) == expand_rational(geometric(5), self.N)
        assert to_ordinary(lr_fraction(1, polynomial_series([1], self.N))) == [1] * self.N
        assert to_ordinary(lr_fraction(1, polynomial_series([0, 1], self.N))) == list(range(self.N))

    def test_lr_fraction_alpha_zero(self):
        with pytest.raises(ValueError):
            lr_fraction(0, polynomial_series([1], 3))

    @pytest.mark.parametrize("alpha", [1, -1, 2, -2, 3, -3, F(1, 2)])
    def test_lr_fraction_vs_sequence(self, alpha):
        rng = random.Random(alpha.__hash__())
        bv = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(self.N)]
        b = Sequence(bv)
        direct = lr_product_seq(expand_rational(geometric(alpha), self.N), b, self.N)
        assert to_ordinary(lr_fraction(alpha, ordinary_series(b, self.N))) == direct

    @pytest.mark.parametrize("alpha", [1, -2, F(1, 2)])
    def test_lr_fraction_rational(self, alpha):
        r = RationalFunction([1, 3], [1, -1, 2])
        out = lr_fraction_rational(alpha, r)
        direct = lr_product_seq(expand_rational(geometric(alpha), 25), expand_rational(r, 25), 25)
        assert expand_rational(out, 25) == direct

    def test_lr_monomial_examples(self):
        ones = polynomial_series([1] * self.N, self.N)
        assert to_ordinary(lr_monomial(1, ones)) == list(range(self.N))
        assert to_ordinary(lr_monomial(2, ones)) == [comb(n, 2) for n in range(self.N)]
        ce = ordinary_series(expand_rational(cE, self.N), self.N)
        out = to_ordinary(lr_monomial(4, ce))
        assert out[5] == 5
        assert out == [comb(n, 4) * (expand_rational(cE, self.N)[n - 4] if n >= 4 else 0) for n in range(self.N)]

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_lr_monomial_vs_sequence(self, p):
        b = Sequence([F(n * n - 3, n + 1) for n in range(self.N)])
        tp = Sequence([1 if n == p else 0 for n in range(self.N)])
        assert to_ordinary(lr_monomial(p, ordinary_series(b, self.N))) == lr_product_seq(tp, b, self.N)

    def test_fraction_power_identity_case(self):
        assert fraction_power_as_lr_combination(5, 1) == [(0, 1)]

    @pytest.mark.parametrize("beta,p", [(1, 2), (2, 3), (-1, 4), (F(1, 2), 3), (3, 1)])
    def test_fraction_power_reconstruction(self, beta, p):
        N = self.N
        total = [F(0)] * N
        g = expand_rational(geometric(beta), N)
        for q, lam in fraction_power_as_lr_combination(beta, p):
            tq = Sequence([1 if n == q else 0 for n in range(N)])
            part = lr_product_seq(g, tq, N)
            total = [x + lam * y for x, y in zip(total, part.values())]
        assert total == expand_rational(geometric(beta, p), N).values()

    def test_fraction_power_closed_coefficients(self):
        # lam_q = C(p-1, q) beta^q
        for beta in (2, F(-1, 3)):
            for p in range(1, 6):
                got = dict(fraction_power_as_lr_combination(beta, p))
                assert got == {q: comb(p - 1, q) * F(beta) ** q for q in range(p)}

    def test_associativity_bracketing(self):
        N = 16
        g = expand_rational(geometric(2), N)
        t3 = Sequence([1 if n == 3 else 0 for n in range(N)])
        b = expand_rational(RationalFunction([1], [1, -1, -1]), N)
        assert lr_product_seq(lr_product_seq(g, t3, N), b, N) == lr_product_seq(g, lr_product_seq(t3, b, N), N)


class TestHadamardRational:
    def test_examples(self):
        assert hadamard_rational(geometric(2), geometric(3)) == geometric(6)
        sq = hadamard_rational(geometric(1, 2), geometric(1, 2))
        assert sq == RationalFunction([1, 1], Polynomial([1, -1]) ** 3)
        assert hadamard_rational(cE, geometric(1)) == cE

    @settings(max_examples=20, deadline=None)
    @given(rational_functions(), rational_functions())
    def test_matches_termwise(self, a, b):
        r = hadamard_rational(a, b)
        assert expand_rational(r, 40) == hadamard_series(expand_rational(a, 40), expand_rational(b, 40))


class TestODE:
    def test_examples(self):
        assert verify_ode(ExpPolySum.exp(2), [-2, 1], 12)
        assert verify_ode(ExpPolySum([(0, [F(1, 2)]), (2, [F(1, 2)])]), [0, -2, 1], 12)
        assert not verify_ode(ExpPolySum.exp(2), [-3, 1], 12)
