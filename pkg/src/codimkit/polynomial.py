"""Dense univariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .series import RationalLike, as_rational


class Polynomial:
    """Coefficients low degree first; no trailing zeros (the zero polynomial is ``()``)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: RationalLike) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mon and c == 1:
                parts.append(mon)
            elif mon and c == -1:
                parts.append("-" + mon)
            else:
                cs = str(c) if c.denominator == 1 else f"({c})"
                parts.append(cs + ("*" + mon if mon else ""))
        return " + ".join(parts).replace("+ -", "- ")

    @staticmethod
    def _coerce(other) -> "Polynomial":
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self or not other:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def monic(self) -> "Polynomial":
        return self * (1 / self.coeffs[-1]) if self else self

    def content_integer(self) -> tuple[Fraction, list[int]]:
        """``self = scale * Polynomial(ints)`` with ``ints`` primitive."""
        if not self:
            return Fraction(0), []
        m = 1
        for c in self.coeffs:
            m = lcm(m, c.denominator)
        ints = [int(c * m) for c in self.coeffs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return Fraction(g, m), [x // g for x in ints]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


T = Polynomial([0, 1])
ONE = Polynomial([1])
