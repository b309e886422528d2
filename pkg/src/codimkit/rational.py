"""Closed forms of C-finite sequences and the products that preserve them.

The four equivalent descriptions of a sequence with rational generating
function are represented here:

* :class:`RationalFunction` -- ``a(t) = num(t) / den(t)``;
* :class:`LinearRecurrence` -- constant-coefficient recurrence plus initial terms;
* :class:`QuasiPolynomial` -- ``a_n = sum p_i(n) alpha_i**n`` for large ``n``;
* :class:`ExpPolySum` -- ``sum f_i(t) e^{beta_i t}``, the exponential generating
  function (its annihilating operator is ``prod (D - beta_i)**(deg f_i + 1)``).

Only rational constants are supported.  Conversions that would need
irrational roots raise :class:`IrreducibleFactorError`; the products
(:func:`lr_product_rational`, :func:`hadamard_rational`) never need roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence as _Seq

from . import linalg
from .polynomial import ONE, Polynomial, poly_gcd
from .series import (
    EXPONENTIAL,
    ORDINARY,
    RationalLike,
    Sequence,
    SeriesError,
    TruncatedSeries,
    as_rational,
    cauchy_product,
    compose_mobius,
    derivative,
    exp_series,
    lr_product_seq,
    polynomial_series,
    to_ordinary,
)


class IrreducibleFactorError(ValueError):
    """A denominator has a factor without rational roots."""

    def __init__(self, factor: Polynomial):
        super().__init__(f"denominator factor {factor} has no rational roots")
        self.factor = factor


class ReconstructionError(RuntimeError):
    """Guess-and-verify failed at a degree bound that is supposed to hold."""


def _poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, Fraction, str)):
        return Polynomial([p])
    return Polynomial(p)


class RationalFunction:
    """``num / den`` in lowest terms, normalized so that ``den(0) == 1``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num, den = _poly(num), _poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den) if num else den.monic()
        if g.degree > 0:
            num, den = num // g, den // g
        if not num:
            den = ONE
        d0 = den[0]
        if d0 == 0:
            raise SeriesError(f"denominator {den} vanishes at t=0; not a power series")
        self.num = num * (1 / d0)
        self.den = den * (1 / d0)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def expand(self, N: int) -> Sequence:
        return expand_rational(self, N)

    def series(self, N: int) -> TruncatedSeries:
        return TruncatedSeries(expand_rational(self, N).values(), ORDINARY)

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num.coeffs], "den": [str(c) for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        return cls(Polynomial(as_rational(x) for x in obj["num"]), Polynomial(as_rational(x) for x in obj["den"]))


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    return RationalFunction(Polynomial([x]))


def geometric(alpha: RationalLike, power: int = 1) -> RationalFunction:
    """``1 / (1 - alpha t)**power``."""
    return RationalFunction(ONE, Polynomial([1, -as_rational(alpha)]) ** power)


def expand_rational(r: RationalFunction, N: int) -> Sequence:
    """First ``N`` Taylor coefficients of ``r`` at 0."""
    den = r.den
    if den[0] == 0:
        raise SeriesError("denominator vanishes at t=0")
    d0 = den[0]
    out = []
    for n in range(N):
        acc = r.num[n]
        for k in range(1, min(n, den.degree) + 1):
            if den[k]:
                acc -= den[k] * out[n - k]
        out.append(acc / d0)
    return Sequence(out)


# --- linear recurrences ------------------------------------------------------

@dataclass(frozen=True)
class LinearRecurrence:
    """``a_n = c_1 a_{n-1} + ... + c_k a_{n-k}`` for every ``n >= start + k``.

    ``initial`` holds ``a_0 ... a_{start+k-1}``.
    """

    coeffs: tuple
    initial: tuple
    start: int = 0

    def __init__(self, coeffs: Iterable[RationalLike], initial: Iterable[RationalLike], start: int = 0):
        coeffs = tuple(as_rational(c) for c in coeffs)
        initial = tuple(as_rational(c) for c in initial)
        if start < 0:
            raise ValueError("start must be non-negative")
        if len(initial) != start + len(coeffs):
            raise ValueError(f"need {start + len(coeffs)} initial terms, got {len(initial)}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "start", start)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def terms(self, N: int) -> Sequence:
        a = list(self.initial[:N])
        while len(a) < N:
            n = len(a)
            a.append(sum((c * a[n - i - 1] for i, c in enumerate(self.coeffs)), Fraction(0)))
        return Sequence(a if a else [0])

    def to_json(self) -> dict:
        return {
            "coeffs": [str(c) for c in self.coeffs],
            "initial": [str(c) for c in self.initial],
            "start": self.start,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LinearRecurrence":
        return cls([as_rational(x) for x in obj["coeffs"]], [as_rational(x) for x in obj["initial"]], obj.get("start", 0))


def recurrence_to_rational(rec: LinearRecurrence) -> RationalFunction:
    den = Polynomial([1] + [-c for c in rec.coeffs])
    m = rec.start + rec.order
    init = Polynomial(rec.initial)
    # den * a(t) is a polynomial of degree < start + k
    num_full = den * init
    return RationalFunction(Polynomial(num_full.coeffs[:m]), den)


# --- rational roots and quasi-polynomials -----------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Polynomial) -> tuple[dict, Polynomial]:
    """Rational roots with multiplicities, and the cofactor with no rational roots."""
    roots: dict = {}
    rest = p
    while rest.degree > 0 and rest[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        rest = Polynomial(rest.coeffs[1:])
    changed = True
    while changed and rest.degree > 0:
        changed = False
        _, ints = rest.content_integer()
        for q in _divisors(ints[-1]):
            for pnum in _divisors(ints[0]):
                for cand in (Fraction(pnum, q), Fraction(-pnum, q)):
                    if rest(cand) == 0:
                        roots[cand] = roots.get(cand, 0) + 1
                        rest = rest // Polynomial([-cand, 1])
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return roots, rest


@dataclass(frozen=True)
class QuasiPolynomial:
    """``a_n = sum_i p_i(n) alpha_i**n`` for ``n >= threshold``.

    ``parts`` is a tuple of ``(alpha, Polynomial in n)``.  ``initial`` optionally
    lists the true values ``a_0 ... a_{threshold-1}`` where they deviate from the
    formula; when empty the formula is used everywhere.
    """

    parts: tuple
    threshold: int = 0
    initial: tuple = ()

    def __init__(self, parts, threshold: int = 0, initial: Iterable[RationalLike] = ()):
        merged: dict = {}
        for alpha, p in parts:
            alpha = as_rational(alpha)
            if alpha == 0:
                raise ValueError("bases must be nonzero")
            merged[alpha] = merged.get(alpha, Polynomial()) + _poly(p)
        clean = tuple(sorted(((a, p) for a, p in merged.items() if p), key=lambda ap: ap[0]))
        initial = tuple(as_rational(x) for x in initial)
        if initial and len(initial) != threshold:
            raise ValueError("initial must cover exactly the indices below threshold")
        object.__setattr__(self, "parts", clean)
        object.__setattr__(self, "threshold", threshold)
        object.__setattr__(self, "initial", initial)

    def formula(self, n: int) -> Fraction:
        return sum((p(Fraction(n)) * alpha ** n for alpha, p in self.parts), Fraction(0))

    def __call__(self, n: int) -> Fraction:
        if n < self.threshold and self.initial:
            return self.initial[n]
        return self.formula(n)

    def terms(self, N: int) -> Sequence:
        return Sequence([self(n) for n in range(N)])


def rational_to_quasipolynomial(r: RationalFunction) -> QuasiPolynomial:
    roots, rest = rational_roots(r.den)
    if rest.degree > 0:
        raise IrreducibleFactorError(rest)
    threshold = max(r.num.degree - r.den.degree + 1, 0)
    bases = [(1 / root, m) for root, m in sorted(roots.items())]
    unknowns = [(alpha, j) for alpha, m in bases for j in range(m)]
    k = len(unknowns)
    vals = expand_rational(r, threshold + k).values()
    A = [[Fraction(n) ** j * alpha ** n for alpha, j in unknowns] for n in range(threshold, threshold + k)]
    sol = linalg.solve(A, vals[threshold:]) if k else []
    if sol is None:
        raise ReconstructionError("partial-fraction system is singular")
    parts = []
    pos = 0
    for alpha, m in bases:
        parts.append((alpha, Polynomial(sol[pos:pos + m])))
        pos += m
    q = QuasiPolynomial(parts, threshold, vals[:threshold])
    return q


# --- exponential-polynomial sums ---------------------------------------------

class ExpPolySum:
    """``sum_i f_i(t) e^{beta_i t}`` with distinct rational ``beta_i``."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        if isinstance(parts, dict):
            parts = parts.items()
        merged: dict = {}
        for beta, f in parts:
            beta = as_rational(beta)
            merged[beta] = merged.get(beta, Polynomial()) + _poly(f)
        self.parts = tuple(sorted(((b, f) for b, f in merged.items() if f), key=lambda bf: bf[0]))

    @classmethod
    def exp(cls, beta: RationalLike, f=(1,)) -> "ExpPolySum":
        return cls([(beta, f)])

    @classmethod
    def poly(cls, f) -> "ExpPolySum":
        return cls([(0, f)])

    def __eq__(self, other):
        if isinstance(other, ExpPolySum):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        inner = " + ".join(f"({f})*e^({b}t)" for b, f in self.parts) or "0"
        return f"ExpPolySum({inner})"

    def __add__(self, other):
        return ExpPolySum(list(self.parts) + list(_as_eps(other).parts))

    __radd__ = __add__

    def __neg__(self):
        return ExpPolySum([(b, -f) for b, f in self.parts])

    def __sub__(self, other):
        return self + (-_as_eps(other))

    def __rsub__(self, other):
        return _as_eps(other) - self

    def __mul__(self, other):
        return exppoly_mul(self, _as_eps(other))

    __rmul__ = __mul__

    @property
    def exponents(self) -> list:
        return [b for b, _ in self.parts]

    def annihilator(self) -> Polynomial:
        """Coefficients (in ``D``) of ``prod (D - beta_i)**(deg f_i + 1)``."""
        op = ONE
        for b, f in self.parts:
            op = op * Polynomial([-b, 1]) ** (f.degree + 1)
        return op

    def expand(self, N: int) -> TruncatedSeries:
        return exppoly_expand(self, N)

    def terms(self, N: int) -> Sequence:
        return to_ordinary(exppoly_expand(self, N))

    def coefficient(self, n: int) -> Fraction:
        """``a_n = n! [t^n]``, using ``n! [t^n] t^k e^{bt} = k! C(n,k) b^(n-k)``."""
        acc = Fraction(0)
        for beta, f in self.parts:
            fk = 1
            for k, c in enumerate(f.coeffs):
                if k:
                    fk *= k
                if k > n:
                    break
                if c:
                    acc += c * fk * comb(n, k) * beta ** (n - k)
        return acc


def _as_eps(x) -> ExpPolySum:
    if isinstance(x, ExpPolySum):
        return x
    if isinstance(x, Polynomial):
        return ExpPolySum.poly(x)
    return ExpPolySum.poly([x])


def _stirling2_rows(m: int) -> list[list[int]]:
    S = [[1]]
    for j in range(1, m):
        prev = S[-1]
        row = [0] * (j + 1)
        for k in range(1, j + 1):
            row[k] = (prev[k - 1] if k - 1 < len(prev) else 0) + k * (prev[k] if k < len(prev) else 0)
        S.append(row)
    return S


def quasipolynomial_to_exppoly(q: QuasiPolynomial) -> ExpPolySum:
    """Exponential generating function of ``q``, exceptional terms included.

    ``n^j = sum_k S(j,k) n(n-1)...(n-k+1)`` and ``sum_n n^(k falling) alpha^n t^n/n!
    = (alpha t)^k e^{alpha t}``.  Deviations below the threshold add a polynomial
    (the ``e^{0 t}`` part).
    """
    parts = []
    for alpha, p in q.parts:
        S = _stirling2_rows(len(p.coeffs))
        f = [Fraction(0)] * len(p.coeffs)
        for j, c in enumerate(p.coeffs):
            for k in range(j + 1):
                f[k] += c * S[j][k]
        parts.append((alpha, Polynomial(fk * alpha ** k for k, fk in enumerate(f))))
    corr = []
    fact = 1
    for n in range(q.threshold):
        if n:
            fact *= n
        corr.append((q(n) - q.formula(n)) / fact)
    parts.append((0, Polynomial(corr)))
    return ExpPolySum(parts)


def exppoly_expand(e: ExpPolySum, N: int) -> TruncatedSeries:
    total = [Fraction(0)] * N
    for beta, f in e.parts:
        s = cauchy_product(polynomial_series(f.coeffs, N, EXPONENTIAL), exp_series(beta, N))
        for i in range(N):
            total[i] += s.coeffs[i]
    return TruncatedSeries(total, EXPONENTIAL)


def exppoly_mul(a: ExpPolySum, b: ExpPolySum) -> ExpPolySum:
    return ExpPolySum([(ba + bb, fa * fb) for ba, fa in a.parts for bb, fb in b.parts])


def rational_to_exppoly(r: RationalFunction) -> ExpPolySum:
    return quasipolynomial_to_exppoly(rational_to_quasipolynomial(r))


def exppoly_to_rational(e: ExpPolySum) -> RationalFunction:
    """Ordinary generating function of the sequence whose EGF is ``e``.

    ``t^k e^{bt}`` has ordinary generating function ``k! t^k / (1 - b t)^(k+1)``.
    """
    total = RationalFunction(Polynomial())
    for beta, f in e.parts:
        fk = 1
        for k, c in enumerate(f.coeffs):
            if k:
                fk *= k
            if c:
                total = total + RationalFunction(Polynomial.monomial(k, c * fk), Polynomial([1, -beta]) ** (k + 1))
    return total


# --- certified reconstruction and the products ------------------------------

def reconstruct_rational(s: Sequence, degree_bound: int) -> RationalFunction:
    """The rational function with numerator and denominator degree <= D that
    agrees with ``s`` through ``t**(2D+1)``.

    If the true generating function is rational with both degrees <= D, this
    returns it: any two such fits agree, because their cross difference is a
    polynomial of degree <= 2D divisible by ``t**(2D+2)``.
    """
    D = degree_bound
    need = 2 * D + 2
    c = s.prefix(need)
    rows = [[c[n - j] if n - j >= 0 else Fraction(0) for j in range(D + 1)] for n in range(D + 1, need)]
    ker = linalg.nullspace(rows, D + 1)
    if not ker:
        raise ReconstructionError(f"no rational fit with degrees <= {D}")
    Q = Polynomial(ker[0])
    P = Polynomial((Q * Polynomial(c[:D + 1])).coeffs[:D + 1])
    try:
        return RationalFunction(P, Q)
    except SeriesError as exc:
        raise ReconstructionError("fit is not a power series at 0") from exc


def _nonneg_deg(p: Polynomial) -> int:
    return max(p.degree, 0)


def _egf_shape(r: RationalFunction) -> tuple:
    """``(parts, weight)`` bounds for ``sum_i f_i e^{beta_i t}``: number of parts
    and ``sum_i (deg f_i + 1)``.  A numerator of degree ``>= deg den`` adds a
    polynomial part (``beta = 0``) of degree ``deg num - deg den``."""
    d = r.den.degree
    p = r.num.degree - d
    return (d + 1, d + p + 1) if p >= 0 else (d, d)


def lr_degree_bound(a: RationalFunction, b: RationalFunction) -> int:
    """Degree bound for numerator and denominator of ``a *_LR b``.

    The product's exponential form has parts ``f_i g_j e^{(beta_i+gamma_j)t}``,
    and a part ``F e^{ct}`` has ordinary generating function of numerator and
    denominator degree ``<= deg F + 1``.  Summing over pairs gives
    ``nb*sa + na*sb - na*nb``.
    """
    da, db = a.den.degree, b.den.degree
    simple = 2 * da * db + da + db + _nonneg_deg(a.num) + _nonneg_deg(b.num)
    na, sa = _egf_shape(a)
    nb, sb = _egf_shape(b)
    return max(simple, nb * sa + na * sb - na * nb)


def lr_product_rational(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    """Rational generating function of the binomial convolution of ``a`` and ``b``."""
    D = lr_degree_bound(a, b)
    M = 2 * D + 2
    c = lr_product_seq(expand_rational(a, M), expand_rational(b, M), M)
    try:
        r = reconstruct_rational(c, D)
    except ReconstructionError as exc:
        raise ReconstructionError(f"LR product reconstruction failed at proved bound {D}") from exc
    if expand_rational(r, M) != c:
        raise ReconstructionError("reconstructed LR product disagrees with its own data")
    return r


def hadamard_degree_bound(a: RationalFunction, b: RationalFunction) -> int:
    return a.den.degree * b.den.degree + _nonneg_deg(a.num) + _nonneg_deg(b.num) + 1


def hadamard_rational(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    """Rational generating function of the termwise product."""
    D = hadamard_degree_bound(a, b)
    M = 2 * D + 2
    ea, eb = expand_rational(a, M), expand_rational(b, M)
    c = Sequence([x * y for x, y in zip(ea, eb)])
    r = reconstruct_rational(c, D)
    if expand_rational(r, M) != c:
        raise ReconstructionError("reconstructed Hadamard product disagrees with its own data")
    return r


def lr_fraction(alpha: RationalLike, b: TruncatedSeries) -> TruncatedSeries:
    """``1/(1 - alpha t) *_LR b`` as ``b(t/(1 - alpha t)) / (1 - alpha t)``."""
    alpha = as_rational(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if b.kind != ORDINARY:
        raise SeriesError("lr_fraction works on ordinary generating functions")
    N = b.order
    geo = TruncatedSeries([alpha ** n for n in range(N)], ORDINARY)
    return cauchy_product(geo, compose_mobius(b, alpha, N))


def lr_fraction_rational(alpha: RationalLike, r: RationalFunction) -> RationalFunction:
    """Closed form of ``1/(1 - alpha t) *_LR r`` for a rational ``r``."""
    alpha = as_rational(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    u = Polynomial([1, -alpha])

    def substituted(p: Polynomial, d: int) -> Polynomial:
        # (1 - alpha t)^d * p(t / (1 - alpha t)) for d >= deg p
        return sum((Polynomial.monomial(k, c) * u ** (d - k) for k, c in enumerate(p.coeffs)), Polynomial())

    d = max(r.num.degree, r.den.degree, 0)
    return RationalFunction(substituted(r.num, d), u * substituted(r.den, d))


def lr_monomial(p: int, b: TruncatedSeries) -> TruncatedSeries:
    """``t^p *_LR b = (t^p / p!) (d/dt)^p (t^p b(t))``, same order as ``b``.

    Coefficientwise this is ``C(n, p) b_{n-p}``.  The operator has to act on
    ``t^p b`` rather than on ``b``: ``t^p b^{(p)} / p!`` would give ``C(n, p) b_n``.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    if p >= b.order:
        raise SeriesError(f"p={p} exhausts a series of order {b.order}")
    d = derivative(b.shift_up(p), p)
    fp = 1
    for j in range(2, p + 1):
        fp *= j
    return TruncatedSeries([0] * p + [c / fp for c in d.coeffs[: b.order - p]], b.kind)


def fraction_power_as_lr_combination(beta: RationalLike, p: int) -> list:
    """``[(q, lam_q)]`` with ``1/(1-beta t)^p = sum lam_q (1/(1-beta t) *_LR t^q)``.

    ``1/(1-beta t) *_LR t^q = t^q / (1-beta t)^(q+1)``, so after multiplying by
    ``(1-beta t)^p`` the identity reads ``1 = sum_q lam_q t^q (1-beta t)^(p-1-q)``.
    The ``q``-th summand starts at ``t^q``, so the system is triangular.
    """
    beta = as_rational(beta)
    if beta == 0:
        raise ValueError("beta must be nonzero")
    if p < 1:
        raise ValueError("p must be a positive integer")
    u = Polynomial([1, -beta])
    basis = [Polynomial.monomial(q) * u ** (p - 1 - q) for q in range(p)]
    target = [Fraction(1)] + [Fraction(0)] * (p - 1)
    lam = []
    for q in range(p):
        acc = target[q] - sum((lam[j] * basis[j][q] for j in range(q)), Fraction(0))
        lam.append(acc / basis[q][q])
    return [(q, c) for q, c in enumerate(lam) if c]


def verify_ode(e, op_coeffs: _Seq[RationalLike], N: int) -> bool:
    """Does ``sum_j op_coeffs[j] D^j`` annihilate ``e`` through order ``N - deg``?"""
    op = [as_rational(c) for c in op_coeffs]
    deg = len(op) - 1
    if N <= deg:
        raise ValueError("order too small for the operator")
    s = e.expand(N) if isinstance(e, ExpPolySum) else e.truncate(N)
    out = [Fraction(0)] * (N - deg)
    for j, c in enumerate(op):
        if not c:
            continue
        dj = derivative(s, j) if j else s
        for i in range(N - deg):
            out[i] += c * dj.coeffs[i]
    return not any(out)


__all__ = [
    "IrreducibleFactorError",
    "ReconstructionError",
    "RationalFunction",
    "geometric",
    "expand_rational",
    "LinearRecurrence",
    "recurrence_to_rational",
    "rational_roots",
    "QuasiPolynomial",
    "rational_to_quasipolynomial",
    "ExpPolySum",
    "quasipolynomial_to_exppoly",
    "exppoly_expand",
    "exppoly_mul",
    "rational_to_exppoly",
    "exppoly_to_rational",
    "lr_fraction_rational",
    "reconstruct_rational",
    "lr_degree_bound",
    "lr_product_rational",
    "hadamard_rational",
    "lr_fraction",
    "lr_monomial",
    "fraction_power_as_lr_combination",
    "verify_ode",
]
