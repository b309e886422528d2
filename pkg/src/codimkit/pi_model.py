"""Codimension sequences of PI-algebras and T-ideals.

The catalog holds the explicitly known codimension sequences (field ``K``,
Grassmann algebra ``E``, ``M2 = M_2(K)``, ``E (x) E``, upper triangular
matrices, and T-ideals generated by a single identity).  On top of it sit the
product formula for ``T(R) = T(R1) T(R2)``, the proper codimension transform,
the Bessel-function forms of the exponential series of ``M2`` and ``E (x) E``,
and growth estimators.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Optional, Sequence as _Seq

from .characters import CharacterSum, degree_of, outer_product, partition
from .polynomial import Polynomial
from .rational import (
    ExpPolySum,
    RationalFunction,
    exppoly_to_rational,
    geometric,
    lr_fraction_rational,
)
from .series import (
    EXPONENTIAL,
    ORDINARY,
    Sequence,
    SeriesError,
    TruncatedSeries,
    binomial_pow_series,
    cauchy_product,
    derivative,
    exp_series,
    lr_product_seq,
    polynomial_series,
    to_exponential,
    to_ordinary,
)

DERIVED = "derived"
PAPER = "paper"
DEFAULT_VARIANT = DERIVED

F = Fraction


class UnknownCatalogEntry(KeyError):
    pass


class ProperSeq(Sequence):
    """A proper codimension sequence ``gamma_n`` (``c~ = e^t gamma~``)."""


# --- closed forms used by the catalog ------------------------------------------

def _sqrt_1_minus_4t(N: int, power: Fraction = F(1, 2)) -> TruncatedSeries:
    return binomial_pow_series(power, polynomial_series([0, -4], N), N)


def m2_ordinary_closed_form(N: int) -> Sequence:
    """``(1 - 2t - sqrt(1-4t)) / (2t^2) - t^3/(1-t)^4 + 1/(1-t) - 1/(1-2t)``."""
    s = _sqrt_1_minus_4t(N + 2)
    alg = (polynomial_series([1, -2], N + 2) - s).shift_down(2) * F(1, 2)
    rat = RationalFunction(Polynomial.monomial(3, -1), Polynomial([1, -1]) ** 4) + geometric(1) - geometric(2)
    return Sequence((alg + rat.series(N)).coeffs)


def etensore_ordinary_closed_form(N: int) -> Sequence:
    """``1/2 + 1/(2 sqrt(1-4t)) + t/(1-t)^2 + 1/(1-t) - 1/(1-2t)``."""
    s = _sqrt_1_minus_4t(N, F(-1, 2)) * F(1, 2)
    rat = (RationalFunction(F(1, 2)) + RationalFunction(Polynomial([0, 1]), Polynomial([1, -1]) ** 2)
           + geometric(1) - geometric(2))
    return Sequence((s + rat.series(N)).coeffs)


def _m2_coeff(n: int) -> int:
    return comb(2 * n + 2, n + 1) // (n + 2) - comb(n, 3) + 1 - 2 ** n


def _etensore_coeff(n: int) -> int:
    if n == 0:
        return 1
    return comb(2 * n, n) // 2 + n + 1 - 2 ** n


def _hall_coeff(n: int) -> int:
    if n == 0:
        return 1
    return (_m2_coeff(n) + 2 ** (n - 1) - 1 - comb(n, 2)
            + 14 * comb(n, 5) + 33 * comb(n, 6) + 14 * comb(n, 7))


def _poly_exp(beta, coeffs) -> ExpPolySum:
    return ExpPolySum([(beta, Polynomial(coeffs))])


EXP_K = ExpPolySum.exp(1)
EXP_E = ExpPolySum([(0, [F(1, 2)]), (2, [F(1, 2)])])
EXP_F4 = EXP_E + _poly_exp(1, [0, 0, 0, 0, F(2, 24)])
EXP_F5 = ExpPolySum([
    (2, [F(1, 2), -1, 1]),
    (1, [0, 1, 0, F(-1, 6), 0, F(5, 120), F(5, 720)]),
    (0, [F(1, 2)]),
])
# additive correction of s4T and cbmT over M2 and E (x) E
EXP_FIVE_SIX = _poly_exp(1, [0, 0, 0, 0, 0, F(5, 120), F(5, 720)])


def tideal_product_exppoly(a: ExpPolySum, b: ExpPolySum, variant: str = DEFAULT_VARIANT) -> ExpPolySum:
    """Exponential codimension series of ``T(R1) T(R2)`` in closed form."""
    factor = _variant_factor_exppoly(variant)
    return a + b + factor * a * b


def _variant_factor_exppoly(variant: str) -> ExpPolySum:
    if variant == DERIVED:
        return ExpPolySum.poly([-1, 1])
    if variant == PAPER:
        return ExpPolySum([(1, [1]), (0, [-1])])
    raise ValueError(f"unknown variant {variant!r}; use 'derived' or 'paper'")


@lru_cache(maxsize=None)
def upper_triangular_exppoly(k: int) -> ExpPolySum:
    """``T(U_k(K)) = T(K)^k`` through the derived product formula."""
    if k < 1:
        raise ValueError("k must be positive")
    e = EXP_K
    for _ in range(k - 1):
        e = tideal_product_exppoly(e, EXP_K, DERIVED)
    return e


# --- catalog -------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    coeff: Callable[[int], Fraction]
    ordinary_closed_form: Optional[Callable[[int], Sequence]] = None
    rational: Optional[RationalFunction] = None
    exp_closed_form: Optional[Callable[[int], TruncatedSeries]] = None
    exppoly: Optional[ExpPolySum] = None
    notes: str = ""

    def terms(self, N: int) -> Sequence:
        return Sequence([self.coeff(n) for n in range(N)])


def _exppoly_entry(name: str, e: ExpPolySum, notes: str) -> CatalogEntry:
    return CatalogEntry(
        name=name,
        coeff=lambda n: e.coefficient(n),
        rational=exppoly_to_rational(e),
        ordinary_closed_form=lambda N: exppoly_to_rational(e).expand(N),
        exp_closed_form=e.expand,
        exppoly=e,
        notes=notes,
    )


def _plus_five_six(base: Callable[[int], int]) -> Callable[[int], int]:
    return lambda n: base(n) + 5 * comb(n, 5) + 5 * comb(n, 6)


def _five_six_rational() -> RationalFunction:
    return (RationalFunction(Polynomial.monomial(5, 5), Polynomial([1, -1]) ** 6)
            + RationalFunction(Polynomial.monomial(6, 5), Polynomial([1, -1]) ** 7))


def _build_catalog() -> dict:
    five_six = _five_six_rational()
    cat = {
        "K": _exppoly_entry("K", EXP_K, "c_n(K) = 1"),
        "E": _exppoly_entry("E", EXP_E, "c_0(E) = 1, c_n(E) = 2^(n-1)"),
        "f4T": _exppoly_entry("f4T", EXP_F4, "c_n(E) + 2 C(n,4) for the T-ideal of [x1,x2,x3,x4]; "
                                 "the multilinear oracle finds c_n(E) + 2 C(n,3) + 2 C(n,4) instead (n <= 6)"),
        "f5T": _exppoly_entry("f5T", EXP_F5, "T-ideal of [x1,...,x5], from its proper cocharacters"),
        "U2": _exppoly_entry("U2", upper_triangular_exppoly(2), "T(U_2) = T(K)^2, derived by product"),
        "U3": _exppoly_entry("U3", upper_triangular_exppoly(3), "T(U_3) = T(K)^3, derived by product"),
        "M2": CatalogEntry(
            "M2", lambda n: F(_m2_coeff(n)),
            ordinary_closed_form=m2_ordinary_closed_form,
            exp_closed_form=lambda N: m2_exp_closed_form(N),
            notes="C_{n+1} - C(n,3) + 1 - 2^n",
        ),
        "EtensorE": CatalogEntry(
            "EtensorE", lambda n: F(_etensore_coeff(n)),
            ordinary_closed_form=etensore_ordinary_closed_form,
            exp_closed_form=lambda N: etensore_exp_closed_form(N),
            notes="C(2n,n)/2 + n + 1 - 2^n for n >= 1",
        ),
        "s4T": CatalogEntry(
            "s4T", lambda n: F(_plus_five_six(_m2_coeff)(n)),
            ordinary_closed_form=lambda N: Sequence(
                (TruncatedSeries(m2_ordinary_closed_form(N).values()) + five_six.series(N)).coeffs),
            exp_closed_form=lambda N: m2_exp_closed_form(N) + EXP_FIVE_SIX.expand(N),
            notes="T-ideal of s_4: c_n(M2) + 5 C(n,5) + 5 C(n,6)",
        ),
        "cbmT": CatalogEntry(
            "cbmT", lambda n: F(_plus_five_six(_etensore_coeff)(n)),
            ordinary_closed_form=lambda N: Sequence(
                (TruncatedSeries(etensore_ordinary_closed_form(N).values()) + five_six.series(N)).coeffs),
            exp_closed_form=lambda N: etensore_exp_closed_form(N) + EXP_FIVE_SIX.expand(N),
            notes="T-ideal of [[x1,x2],[x3,x4],x5]: c_n(E(x)E) + 5 C(n,5) + 5 C(n,6)",
        ),
        "hallT": CatalogEntry(
            "hallT", lambda n: F(_hall_coeff(n)),
            notes="T-ideal of [[x1,x2]^2,x3]; formula valid for n >= 1, c_0 = 1 by convention",
        ),
    }
    return cat


CATALOG = _build_catalog()
CATALOG_NAMES = tuple(CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownCatalogEntry(f"unknown catalog name {name!r}; known: {', '.join(CATALOG_NAMES)}") from None


def catalog_terms(name: str, N: int) -> Sequence:
    return catalog_entry(name).terms(N)


# --- products of T-ideals --------------------------------------------------------

def _variant_factor_series(variant: str, N: int) -> TruncatedSeries:
    if variant == DERIVED:
        return polynomial_series([-1, 1], N, EXPONENTIAL)
    if variant == PAPER:
        return exp_series(1, N) - 1
    raise ValueError(f"unknown variant {variant!r}; use 'derived' or 'paper'")


def tideal_product(c1: Sequence, c2: Sequence, N: int, variant: str = DEFAULT_VARIANT) -> Sequence:
    """Codimensions of ``T(R1) T(R2)`` from those of the factors.

    ``variant="derived"``: ``c~ = c~1 + c~2 + (t - 1) c~1 c~2``, the degree form
    of the cocharacter product formula (confirmed by the multilinear oracle);
    ``variant="paper"``: the same with ``e^t - 1`` in place of ``t - 1``.
    """
    a, b = to_exponential(c1, N), to_exponential(c2, N)
    f = _variant_factor_series(variant, N)
    return to_ordinary(a + b + cauchy_product(f, cauchy_product(a, b)))


def tideal_power_closed_form_k(k: int, N: int) -> Sequence:
    """``((1 + (t-1) e^t)^k - 1) / (t - 1)`` -- the k-fold derived product of T(K)."""
    from .series import series_inverse

    base = polynomial_series([1], N, EXPONENTIAL) + cauchy_product(polynomial_series([-1, 1], N, EXPONENTIAL),
                                                                  exp_series(1, N))
    p = polynomial_series([1], N, EXPONENTIAL)
    for _ in range(k):
        p = cauchy_product(p, base)
    num = p - 1
    return to_ordinary(cauchy_product(num, series_inverse(polynomial_series([-1, 1], N, EXPONENTIAL))))


def tideal_product_cocharacter(chi1: _Seq[CharacterSum], chi2: _Seq[CharacterSum], n: int) -> CharacterSum:
    """Cocharacter of ``T(R1) T(R2)`` in degree ``n`` from those of the factors.

    ``chi_n = chi_n(R1) + chi_n(R2) + chi_(1) (x) sum_{j<n} chi_j(R1) (x) chi_{n-1-j}(R2)
    - sum_{j<=n} chi_j(R1) (x) chi_{n-j}(R2)``, with ``(x)`` the outer product.
    """
    if n > 8:
        from .characters import BudgetError

        raise BudgetError("cocharacter products are limited to n <= 8")
    if len(chi1) <= n or len(chi2) <= n:
        raise ValueError(f"need cocharacters of weights 0..{n}")
    box = CharacterSum.irreducible((1,))
    pos = chi1[n] + chi2[n]
    inner = CharacterSum.zero(n - 1) if n else None
    if n:
        for j in range(n):
            inner = inner + outer_product(chi1[j], chi2[n - 1 - j])
        pos = pos + outer_product(box, inner)
    neg = CharacterSum.zero(n)
    for j in range(n + 1):
        neg = neg + outer_product(chi1[j], chi2[n - j])
    result = pos - neg
    if not all(m > 0 for m in result.terms.values()):
        raise ValueError(f"negative multiplicity in degree {n}: inputs are not cocharacter sequences")
    return result


def cocharacters_K(n: int) -> list:
    """``chi_j(K) = chi_(j)`` for ``j = 0..n``."""
    return [CharacterSum.irreducible((j,)) if j else CharacterSum.irreducible(()) for j in range(n + 1)]


def cocharacters_E(n: int) -> list:
    """``chi_j(E)`` = sum of hook characters ``chi_(j-i, 1^i)``, ``i < j``."""
    out = [CharacterSum.irreducible(())]
    for j in range(1, n + 1):
        out.append(CharacterSum({tuple([j - i] + [1] * i): 1 for i in range(j)}, j))
    return out


# --- proper codimensions ---------------------------------------------------------

def proper_to_codim(g: Sequence, N: int, finite_support: bool = False) -> Sequence:
    """``c_n = sum_k C(n, k) gamma_k``.

    With ``finite_support=True`` the proper sequence is taken to vanish beyond
    its known prefix.
    """
    if N > g.end:
        if not finite_support:
            raise SeriesError(f"need {N} proper codimensions, only {g.end} known")
        g = Sequence(g.values() + [0] * (N - g.end))
    ones = Sequence([1] * N)
    return lr_product_seq(ones, g, N)


def codim_to_proper(c: Sequence, N: int) -> ProperSeq:
    """``gamma~ = e^{-t} c~``."""
    gt = cauchy_product(exp_series(-1, N), to_exponential(c, N))
    return ProperSeq(to_ordinary(gt).values())


def f5_proper_cocharacter(n: int) -> CharacterSum:
    """Proper cocharacter of the T-ideal generated by ``[x1, x2, x3, x4, x5]``.

    The weight-6 term ``(2^2, 1^2)`` corrects a misprinted, non-decreasing shape.
    """
    P = partition
    if n == 0:
        return CharacterSum.irreducible(())
    if n == 1:
        return CharacterSum.zero(1)
    if n in (2, 3):
        return CharacterSum.irreducible((n - 1, 1))
    if n == 5:
        shapes = ["3,2", "3,1^2", "2^2,1", "2,1^3"]
    elif n == 6:
        shapes = ["3^2", "3,1^3", "2^2,1^2", "2,1^4", "1^6"]
    else:
        shapes = [f"3,1^{n - 3}", f"2^2,1^{n - 4}" if n > 4 else "2^2", f"2,1^{n - 2}"]
        if n % 2 == 0:
            shapes.append(f"1^{n}")
    return CharacterSum({P(s): 1 for s in shapes}, n)


def f5_proper_codimensions(N: int) -> ProperSeq:
    return ProperSeq([degree_of(f5_proper_cocharacter(n)) for n in range(N)])


def polynomial_growth_series(gamma: Sequence) -> RationalFunction:
    """``c(R,t) = 1/(1-t) *_LR sum_k gamma_k t^k`` for finitely supported ``gamma``."""
    return lr_fraction_rational(1, RationalFunction(Polynomial(gamma.values())))


# --- Bessel functions -------------------------------------------------------------

def bessel_series(nu: int, N: int) -> TruncatedSeries:
    """Taylor coefficients of ``I_nu(z)`` (``nu`` in 0, 1, 2) to order ``N``.

    ``I_0 = sum (z^2/4)^k / k!^2``, ``I_1 = I_0'``, ``I_2 = 2 I_1' - I_0``.
    """
    if nu not in (0, 1, 2):
        raise ValueError("nu must be 0, 1 or 2")
    M = N + nu
    c = [Fraction(0)] * M
    fk = 1
    for k in range((M + 1) // 2):
        if k:
            fk *= k
        if 2 * k < M:
            c[2 * k] = Fraction(1, 4 ** k * fk * fk)
    i0 = TruncatedSeries(c)
    if nu == 0:
        return i0
    i1 = derivative(i0)
    if nu == 1:
        return i1.truncate(N)
    return (derivative(i1) * 2 - i0.truncate(N)).truncate(N)


def chebyshev_t(n: int) -> Polynomial:
    """``T_n`` via ``T_{n+1} = 2 z T_n - T_{n-1}``."""
    a, b = Polynomial([1]), Polynomial([0, 1])
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, Polynomial([0, 2]) * b - a
    return b


def chebyshev_operator_apply(n: int, s: TruncatedSeries) -> TruncatedSeries:
    """``T_n(d/dz) s``; the result loses ``n`` orders."""
    T = chebyshev_t(n)
    if n >= s.order:
        raise SeriesError("series too short for the operator")
    N = s.order - n
    out = TruncatedSeries([0] * N, s.kind)
    for j, c in enumerate(T.coeffs):
        if c:
            dj = derivative(s, j) if j else s
            out = out + dj.truncate(N) * c
    return out


def _bessel_at_2t(nu: int, N: int) -> TruncatedSeries:
    return bessel_series(nu, N).scale_variable(2).with_kind(EXPONENTIAL)


def m2_exp_closed_form(N: int, bessel_index: int = 1) -> TruncatedSeries:
    """``e^{2t} (I_1(2t)/t - 1) + e^t (1 - t^3/3!)``.

    ``bessel_index`` swaps ``I_1`` for another ``I_nu``; only 1 gives the true series.
    """
    ratio = _bessel_at_2t(bessel_index, N + 1).shift_down(1)
    e2, e1 = exp_series(2, N), exp_series(1, N)
    return cauchy_product(e2, ratio - 1) + cauchy_product(e1, polynomial_series([1, 0, 0, F(-1, 6)], N, EXPONENTIAL))


def etensore_exp_closed_form(N: int) -> TruncatedSeries:
    """``1/2 e^{2t} ((1+t) I_0(2t) - I_1(2t) - t I_2(2t)) + 1/2 + (1+t) e^t - e^{2t}``."""
    i0, i1, i2 = (_bessel_at_2t(nu, N) for nu in (0, 1, 2))
    one_t = polynomial_series([1, 1], N, EXPONENTIAL)
    t = polynomial_series([0, 1], N, EXPONENTIAL)
    e2, e1 = exp_series(2, N), exp_series(1, N)
    bracket = cauchy_product(one_t, i0) - i1 - cauchy_product(t, i2)
    return cauchy_product(e2, bracket) * F(1, 2) + F(1, 2) + cauchy_product(one_t, e1) - e2


_EXP_CLOSED = {
    "M2": m2_exp_closed_form,
    "EtensorE": etensore_exp_closed_form,
}


def verify_exp_closed_form(name: str, N: int) -> bool:
    """Does the Bessel closed form of ``name`` expand to ``e(catalog_terms(name))``?"""
    if name not in _EXP_CLOSED:
        raise UnknownCatalogEntry(f"no exponential closed form for {name!r}")
    return _EXP_CLOSED[name](N).coeffs == to_exponential(catalog_terms(name, N), N).coeffs


# --- growth ------------------------------------------------------------------------

def _log(x) -> float:
    x = Fraction(x)
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class ExponentEstimate:
    root: float
    ratio: float
    nearest: int
    n: int
    trend: tuple = field(default=())


def estimate_exponent(s: Sequence) -> ExponentEstimate:
    """Heuristic integer exponent from the last terms of a positive sequence.

    Reports ``c_N^(1/N)``, ``c_N / c_{N-1}``, the integer nearest to the ratio,
    and the ratios at a few earlier indices as a trend.
    """
    vals = s.values()
    if len(vals) < 20:
        raise ValueError("need at least 20 terms")
    if any(v <= 0 for v in vals):
        raise ValueError("terms must be positive")
    n = len(vals) - 1
    root = math.exp(_log(vals[n]) / n)
    ratio = float(Fraction(vals[n]) / vals[n - 1])
    trend = tuple(float(Fraction(vals[m]) / vals[m - 1]) for m in (n // 4, n // 2, 3 * n // 4, n) if m >= 1)
    return ExponentEstimate(root, ratio, round(ratio), n, trend)


def asymptotic_profile_m2(N: int) -> tuple:
    """``(rate, poly_order)`` for ``c_n(M2)``: last ratio, and the least-squares
    slope of ``log(c_n / 4^n)`` against ``log n`` over ``n`` in ``[N/2, N]``."""
    cs = {n: _m2_coeff(n) for n in range(N // 2, N + 1)}
    rate = float(Fraction(cs[N], cs[N - 1]))
    xs = [math.log(n) for n in range(N // 2, N + 1)]
    ys = [math.log(cs[n]) - n * math.log(4) for n in range(N // 2, N + 1)]
    slope = statistics.linear_regression(xs, ys).slope
    return rate, slope


__all__ = [
    "DERIVED",
    "PAPER",
    "DEFAULT_VARIANT",
    "CATALOG",
    "CATALOG_NAMES",
    "CatalogEntry",
    "ProperSeq",
    "UnknownCatalogEntry",
    "catalog_entry",
    "catalog_terms",
    "m2_ordinary_closed_form",
    "etensore_ordinary_closed_form",
    "tideal_product",
    "tideal_product_exppoly",
    "tideal_power_closed_form_k",
    "tideal_product_cocharacter",
    "upper_triangular_exppoly",
    "cocharacters_K",
    "cocharacters_E",
    "proper_to_codim",
    "codim_to_proper",
    "f5_proper_cocharacter",
    "f5_proper_codimensions",
    "polynomial_growth_series",
    "bessel_series",
    "chebyshev_t",
    "chebyshev_operator_apply",
    "m2_exp_closed_form",
    "etensore_exp_closed_form",
    "verify_exp_closed_form",
    "ExponentEstimate",
    "estimate_exponent",
    "asymptotic_profile_m2",
]
