"""Exact sequences and truncated formal power series over the rationals.

A :class:`Sequence` is a finite, exactly known prefix of an infinite sequence
``a_offset, a_offset+1, ...`` (indices below ``offset`` are zero).  A
:class:`TruncatedSeries` is an element of ``Q[[t]]`` known modulo ``t**order``;
its ``kind`` records whether the stored coefficients are ``a_n`` (ordinary
generating function) or ``a_n / n!`` (exponential generating function).

Every operation returns a result whose ``order`` is exactly the number of
coefficients it guarantees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence as _Seq, Union

ORDINARY = "ordinary"
EXPONENTIAL = "exponential"

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a :class:`Fraction`, refusing floats and decimal strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.match(x):
            raise ValueError(f"not an exact rational literal: {x!r}")
        return Fraction(x.replace(" ", ""))
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def rational_str(x: Fraction) -> str:
    return str(x)


class SeriesError(ValueError):
    """Raised on invalid series operations (kind mismatch, order exhausted...)."""


@dataclass(frozen=True)
class Sequence:
    """Prefix ``a_offset, ..., a_{offset+len-1}`` of a rational sequence."""

    terms: tuple
    offset: int = 0

    def __init__(self, terms: Iterable[RationalLike], offset: int = 0):
        terms = tuple(as_rational(x) for x in terms)
        if not terms:
            raise ValueError("a Sequence needs at least one term")
        if offset < 0:
            raise ValueError("offset must be non-negative")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "offset", int(offset))

    @property
    def end(self) -> int:
        """One past the largest known index."""
        return self.offset + len(self.terms)

    def __len__(self) -> int:
        return self.end

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError(n)
        if n < self.offset:
            return Fraction(0)
        if n >= self.end:
            raise IndexError(f"index {n} beyond known prefix (end={self.end})")
        return self.terms[n - self.offset]

    def prefix(self, N: int) -> list:
        """Values ``a_0 ... a_{N-1}`` with the implicit leading zeros filled in."""
        if N > self.end:
            raise SeriesError(f"need {N} terms, only {self.end} known")
        return [self[n] for n in range(N)]

    def values(self) -> list:
        return self.prefix(self.end)

    def __iter__(self):
        return iter(self.values())

    def __eq__(self, other):
        if isinstance(other, Sequence):
            return self.end == other.end and self.values() == other.values()
        if isinstance(other, (list, tuple)):
            return self.values() == [as_rational(x) for x in other]
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.values()))

    def __repr__(self):
        shown = ", ".join(str(x) for x in self.terms[:12])
        more = ", ..." if len(self.terms) > 12 else ""
        return f"Sequence([{shown}{more}], offset={self.offset})"

    def to_json(self) -> dict:
        return {"offset": self.offset, "terms": [rational_str(x) for x in self.terms]}

    @classmethod
    def from_json(cls, obj: dict) -> "Sequence":
        try:
            offset = obj.get("offset", 0)
            terms = obj["terms"]
        except (AttributeError, KeyError) as exc:
            raise ValueError("sequence JSON needs a 'terms' list") from exc
        if not isinstance(offset, int) or isinstance(offset, bool):
            raise ValueError("'offset' must be an integer")
        if not isinstance(terms, list) or not all(isinstance(x, (str, int)) for x in terms):
            raise ValueError("'terms' must be a list of integer or 'p/q' strings")
        return cls([as_rational(x) for x in terms], offset)


def seq(*terms: RationalLike, offset: int = 0) -> Sequence:
    return Sequence(terms, offset)


@dataclass(frozen=True)
class TruncatedSeries:
    """``coeffs[n]`` is the literal coefficient of ``t**n``; known for ``n < order``."""

    coeffs: tuple
    kind: str = ORDINARY

    def __init__(self, coeffs: Iterable[RationalLike], kind: str = ORDINARY):
        if kind not in (ORDINARY, EXPONENTIAL):
            raise ValueError(f"unknown series kind {kind!r}")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in coeffs))
        object.__setattr__(self, "kind", kind)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(x) for x in self.coeffs[:10])
        more = ", ..." if self.order > 10 else ""
        return f"TruncatedSeries([{shown}{more}], kind={self.kind!r}, order={self.order})"

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.kind != self.kind:
            raise SeriesError(f"kind mismatch: {self.kind} vs {other.kind}")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other] + [0] * (self.order - 1), self.kind)
        N = self._check(other)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(N)], self.kind)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.kind)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return cauchy_product(self, other)
        c = as_rational(other)
        return TruncatedSeries([c * x for x in self.coeffs], self.kind)

    def __rmul__(self, other):
        return self * other

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {N}")
        return TruncatedSeries(self.coeffs[:N], self.kind)

    def with_kind(self, kind: str) -> "TruncatedSeries":
        """Same coefficients, reinterpreted (no conversion)."""
        return TruncatedSeries(self.coeffs, kind)

    def scale_variable(self, c: RationalLike) -> "TruncatedSeries":
        """``s(c t)``."""
        c = as_rational(c)
        out, p = [], Fraction(1)
        for x in self.coeffs:
            out.append(x * p)
            p *= c
        return TruncatedSeries(out, self.kind)

    def shift_up(self, k: int) -> "TruncatedSeries":
        """``t**k * s``; the order grows by ``k``."""
        return TruncatedSeries([0] * k + list(self.coeffs), self.kind)

    def shift_down(self, k: int) -> "TruncatedSeries":
        """``s / t**k``; requires the first ``k`` coefficients to vanish."""
        if any(self.coeffs[:k]):
            raise SeriesError(f"series is not divisible by t^{k}")
        if k >= self.order:
            raise SeriesError("nothing left after division")
        return TruncatedSeries(self.coeffs[k:], self.kind)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def series(coeffs: Iterable[RationalLike], kind: str = ORDINARY) -> TruncatedSeries:
    return TruncatedSeries(coeffs, kind)


def polynomial_series(coeffs: _Seq[RationalLike], N: int, kind: str = ORDINARY) -> TruncatedSeries:
    """A polynomial (dense, low degree first) viewed as a series of order ``N``."""
    out = [as_rational(c) for c in coeffs[:N]]
    out += [Fraction(0)] * (N - len(out))
    return TruncatedSeries(out, kind)


def exp_series(beta: RationalLike, N: int) -> TruncatedSeries:
    """Stored coefficients of ``e^{beta t}``, tagged exponential."""
    beta = as_rational(beta)
    out, c = [], Fraction(1)
    for n in range(N):
        out.append(c)
        c = c * beta / (n + 1)
    return TruncatedSeries(out, EXPONENTIAL)


def to_exponential(s: Sequence, N: int) -> TruncatedSeries:
    """``sum a_n t^n / n!`` to order ``N``."""
    if N < 1:
        raise ValueError("order must be at least 1")
    vals = s.prefix(N)
    out, f = [], 1
    for n, a in enumerate(vals):
        if n:
            f *= n
        out.append(a / f)
    return TruncatedSeries(out, EXPONENTIAL)


def to_ordinary(s: TruncatedSeries) -> Sequence:
    """Recover ``a_n`` from either kind of generating function."""
    if s.kind == ORDINARY:
        return Sequence(s.coeffs)
    out, f = [], 1
    for n, c in enumerate(s.coeffs):
        if n:
            f *= n
        out.append(c * f)
    return Sequence(out)


def ordinary_series(s: Sequence, N: int) -> TruncatedSeries:
    return TruncatedSeries(s.prefix(N), ORDINARY)


def cauchy_product(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    N = a._check(b)
    ac, bc = a.coeffs, b.coeffs
    # skip zero coefficients of the sparser side; common for polynomial factors
    nz = [(i, x) for i, x in enumerate(ac[:N]) if x]
    out = []
    for n in range(N):
        acc = Fraction(0)
        for i, x in nz:
            if i > n:
                break
            y = bc[n - i]
            if y:
                acc += x * y
        out.append(acc)
    return TruncatedSeries(out, a.kind)


def lr_product_seq(a: Sequence, b: Sequence, N: int) -> Sequence:
    """Binomial convolution ``c_n = sum_k C(n,k) a_k b_{n-k}`` for ``n < N``."""
    if N < 1:
        raise ValueError("order must be at least 1")
    av, bv = a.prefix(N), b.prefix(N)
    out = []
    for n in range(N):
        acc = Fraction(0)
        binom = 1
        for k in range(n + 1):
            if av[k] and bv[n - k]:
                acc += binom * av[k] * bv[n - k]
            binom = binom * (n - k) // (k + 1)
        out.append(acc)
    return Sequence(out)


def hadamard_series(a: Sequence, b: Sequence) -> Sequence:
    """Termwise product; known on the overlap of the two prefixes."""
    start = max(a.offset, b.offset)
    end = min(a.end, b.end)
    if end <= start:
        if end <= 0:
            raise SeriesError("empty overlap")
        return Sequence([0] * end)
    return Sequence([a[n] * b[n] for n in range(start, end)], start)


def derivative(s: TruncatedSeries, p: int = 1) -> TruncatedSeries:
    """``p``-th formal derivative; the order drops by ``p``."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if p >= s.order:
        raise SeriesError(f"derivative of order {p} exhausts a series of order {s.order}")
    out = []
    for n in range(s.order - p):
        ff = 1
        for j in range(n + 1, n + p + 1):
            ff *= j
        out.append(s.coeffs[n + p] * ff)
    return TruncatedSeries(out, s.kind)


def binomial_pow_series(alpha: RationalLike, u: TruncatedSeries, N: int | None = None) -> TruncatedSeries:
    """``(1 + u)**alpha`` for ``u(0) = 0``, by ``sum_k C(alpha, k) u**k``."""
    alpha = as_rational(alpha)
    if N is None:
        N = u.order
    if N > u.order:
        raise SeriesError(f"u is only known to order {u.order}")
    if u.coeffs[0] != 0:
        raise SeriesError("binomial series needs u with zero constant term")
    u = u.truncate(N)
    result = [Fraction(0)] * N
    result[0] = Fraction(1)
    upow = polynomial_series([1], N, u.kind)
    c = Fraction(1)
    # u**k = O(t**k), so k < N terms suffice
    for k in range(1, N):
        c = c * (alpha - k + 1) / k
        upow = cauchy_product(upow, u)
        if c:
            for i in range(k, N):
                result[i] += c * upow.coeffs[i]
    return TruncatedSeries(result, u.kind)


def compose_mobius(b: TruncatedSeries, alpha: RationalLike, N: int | None = None) -> TruncatedSeries:
    """``b(t / (1 - alpha t))`` to order ``N`` (at most ``b.order``)."""
    alpha = as_rational(alpha)
    if N is None:
        N = b.order
    if N > b.order:
        raise SeriesError(f"b is only known to order {b.order}")
    if alpha == 0:
        return b.truncate(N)
    # [t^m] t^n (1 - alpha t)^(-n) = C(m-1, n-1) alpha^(m-n) for 1 <= n <= m
    apow = [Fraction(1)]
    for _ in range(N):
        apow.append(apow[-1] * alpha)
    out = [b.coeffs[0]] + [Fraction(0)] * (N - 1)
    for m in range(1, N):
        acc = Fraction(0)
        for n in range(1, m + 1):
            bn = b.coeffs[n]
            if bn:
                acc += comb(m - 1, n - 1) * apow[m - n] * bn
        out[m] = acc
    return TruncatedSeries(out, b.kind)


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    c0 = s.coeffs[0]
    if c0 == 0:
        raise SeriesError("series with zero constant term is not invertible")
    N = s.order
    inv = [Fraction(0)] * N
    inv[0] = 1 / c0
    for n in range(1, N):
        acc = sum((s.coeffs[k] * inv[n - k] for k in range(1, n + 1) if s.coeffs[k]), Fraction(0))
        inv[n] = -acc / c0
    return TruncatedSeries(inv, s.kind)


def factorial_list(N: int) -> list:
    out = [1]
    for n in range(1, N):
        out.append(out[-1] * n)
    return out


__all__ = [
    "ORDINARY",
    "EXPONENTIAL",
    "Sequence",
    "TruncatedSeries",
    "SeriesError",
    "as_rational",
    "seq",
    "series",
    "polynomial_series",
    "exp_series",
    "to_exponential",
    "to_ordinary",
    "ordinary_series",
    "cauchy_product",
    "lr_product_seq",
    "hadamard_series",
    "derivative",
    "binomial_pow_series",
    "compose_mobius",
    "series_inverse",
    "factorial_list",
    "factorial",
]
