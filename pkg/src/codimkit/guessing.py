"""Guess-and-verify: recurrences, rational functions and algebraic equations
from a sequence prefix.

Every guess is fitted on a prefix and then checked on a held-out suffix; a
report with ``found=True`` always reproduces *all* input terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence as _Seq

from . import linalg
from .polynomial import Polynomial
from .rational import LinearRecurrence, RationalFunction, recurrence_to_rational
from .series import ORDINARY, Sequence, TruncatedSeries, cauchy_product


class InsufficientTermsError(ValueError):
    pass


def default_holdout(length: int) -> int:
    return max(8, length // 5)


# --- algebraic equations ------------------------------------------------------

class AlgebraicEquation:
    """``f(t, y) = sum_i coeffs[i](t) * y**i``.

    Stored as a primitive integer polynomial; the lowest nonzero coefficient of
    the leading ``y``-coefficient is positive.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: _Seq, normalize: bool = True):
        cs = [c if isinstance(c, Polynomial) else Polynomial(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            raise ValueError("the zero polynomial is not an equation")
        if normalize:
            cs = _normalize_bivariate(cs)
        self.coeffs = tuple(cs)

    @property
    def ydegree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def tdegree(self) -> int:
        return max(c.degree for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, AlgebraicEquation):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"AlgebraicEquation({self})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            ys = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            parts.append(f"({c})" + ("*" + ys if ys else ""))
        return " + ".join(parts)

    def evaluate(self, b: TruncatedSeries) -> TruncatedSeries:
        return evaluate_bivariate(self.coeffs, b)

    def to_json(self) -> dict:
        return {"coeffs": [[str(x) for x in c.coeffs] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraicEquation":
        return cls([Polynomial(Fraction(x) for x in c) for c in obj["coeffs"]])


def _normalize_bivariate(cs: list) -> list:
    flat = [x for c in cs for x in c.coeffs]
    ints = linalg.primitive_integer_vector(flat)
    scale = Fraction(ints[next(i for i, x in enumerate(flat) if x)], 1) / next(x for x in flat if x)
    out = [c * scale for c in cs]
    lead = out[-1]
    if next(x for x in lead.coeffs if x) < 0:
        out = [-c for c in out]
    return out


def _powers(b: TruncatedSeries, m: int) -> list:
    pw = [TruncatedSeries([1] + [0] * (b.order - 1), b.kind)]
    for _ in range(m):
        pw.append(cauchy_product(pw[-1], b))
    return pw


def evaluate_bivariate(coeffs: _Seq[Polynomial], b: TruncatedSeries) -> TruncatedSeries:
    """``sum_i coeffs[i](t) b(t)**i`` to the order of ``b``."""
    N = b.order
    out = [Fraction(0)] * N
    for c, bp in zip(coeffs, _powers(b, len(coeffs) - 1)):
        for j, cj in enumerate(c.coeffs):
            if cj:
                for n in range(j, N):
                    out[n] += cj * bp.coeffs[n - j]
    return TruncatedSeries(out, b.kind)


# --- reports -------------------------------------------------------------------

@dataclass
class GuessReport:
    found: bool
    kind: str
    model: object = None
    used: int = 0
    verified: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        model = None
        if self.found:
            model = self.model.to_json()
            if isinstance(self.model, LinearRecurrence):
                model["rational"] = recurrence_to_rational(self.model).to_json()
        return {"found": self.found, "kind": self.kind, "model": model, "used": self.used, "verified": self.verified}


def _series(s: Sequence, N: int) -> TruncatedSeries:
    return TruncatedSeries(s.prefix(N), ORDINARY)


# --- recurrences ----------------------------------------------------------------

def _fit_recurrence(a: list, k: int, n0: int, fit: int) -> Optional[list]:
    if k == 0:
        return [] if all(x == 0 for x in a[n0:fit]) else None
    rows, rhs = [], []
    for n in range(n0 + k, fit):
        rows.append([a[n - i] for i in range(1, k + 1)])
        rhs.append(a[n])
    if not rows:
        return None
    return linalg.solve(rows, rhs)


def guess_recurrence(
    s: Sequence,
    max_order: int = 8,
    max_start: int = 4,
    holdout: Optional[int] = None,
) -> GuessReport:
    """Smallest ``(order, start)`` recurrence fitting the prefix, checked on the rest.

    Orders are tried from 0 upward and, for each order, starts from 0 upward.
    The first fit is final: if it fails on the held-out terms the sequence is
    reported as not identified at this length.
    """
    L = s.end
    h = default_holdout(L) if holdout is None else holdout
    if L < 2 * max_order + max_start + h:
        raise InsufficientTermsError(
            f"need at least {2 * max_order + max_start + h} terms, got {L}"
        )
    a = s.values()
    fit = L - h
    for k in range(max_order + 1):
        for n0 in range(max_start + 1):
            sol = _fit_recurrence(a, k, n0, fit)
            if sol is None:
                continue
            rec = LinearRecurrence(sol, a[: n0 + k], n0)
            ok = rec.terms(L).values() == a
            return GuessReport(ok, "recurrence", rec if ok else None, used=fit, verified=h if ok else 0,
                               details={"order": k, "start": n0})
    return GuessReport(False, "recurrence", None, used=fit, verified=0)


def guess_rational(s: Sequence, max_order: int = 8, max_start: int = 4, holdout: Optional[int] = None) -> GuessReport:
    """Rational generating function via :func:`guess_recurrence`."""
    rep = guess_recurrence(s, max_order, max_start, holdout)
    if not rep.found:
        return GuessReport(False, "rational", None, rep.used, 0)
    r = recurrence_to_rational(rep.model)
    return GuessReport(True, "rational", r, rep.used, rep.verified, rep.details)


# --- algebraic equations ---------------------------------------------------------

def _ordered_kernel_candidates(kernel: list) -> list:
    vecs = [linalg.primitive_integer_vector(v) for v in kernel]
    return sorted(vecs)


def guess_algebraic(
    s: Sequence,
    max_ydeg: int = 2,
    max_tdeg: int = 4,
    holdout: Optional[int] = None,
) -> GuessReport:
    """Nonzero ``f(t, y)`` with ``f(t, b(t)) = O(t**L)`` for the whole prefix.

    Searched by increasing ``y``-degree, then ``t``-degree.  The kernel is
    computed exactly on the fitted prefix; shapes with at least as many
    unknowns as fitted equations are skipped since they always have a kernel;
    their number is reported as ``details["skipped"]``.
    Among kernel basis vectors the lexicographically smallest primitive
    integer vector is tried first.
    """
    L = s.end
    h = default_holdout(L) if holdout is None else holdout
    # only the cheapest top-degree shape has to fit; larger ones are skipped
    need = max_ydeg + 2 + h
    if L < need:
        raise InsufficientTermsError(f"need at least {need} terms, got {L}")
    fit = L - h
    b = _series(s, L)
    pw = _powers(b, max_ydeg)
    skipped = 0
    for m in range(1, max_ydeg + 1):
        for d in range(max_tdeg + 1):
            nunk = (m + 1) * (d + 1)
            if nunk >= fit:
                skipped += 1
                continue
            rows = []
            for n in range(fit):
                rows.append([pw[i].coeffs[n - j] if n >= j else 0 for i in range(m + 1) for j in range(d + 1)])
            kernel = linalg.nullspace(rows, nunk)
            if not kernel:
                continue
            for vec in _ordered_kernel_candidates(kernel):
                coeffs = [Polynomial(vec[i * (d + 1):(i + 1) * (d + 1)]) for i in range(m + 1)]
                if not coeffs[-1]:
                    continue
                f = AlgebraicEquation(coeffs)
                if f.evaluate(b).is_zero():
                    return GuessReport(True, "algebraic", f, used=fit, verified=h,
                                       details={"ydeg": m, "tdeg": d, "kernel_dim": len(kernel), "skipped": skipped})
            return GuessReport(False, "algebraic", None, used=fit, verified=0,
                               details={"ydeg": m, "tdeg": d, "kernel_dim": len(kernel), "skipped": skipped})
    return GuessReport(False, "algebraic", None, used=fit, verified=0, details={"skipped": skipped})


def verify_algebraic(f: AlgebraicEquation, s: Sequence) -> bool:
    return f.evaluate(_series(s, s.end)).is_zero()


def algebraic_derivative_equation(f: AlgebraicEquation) -> tuple:
    """``(p, q)`` with ``q = df/dy`` and ``p = df/dt``, so that ``b' = -p(t,b)/q(t,b)``.

    Both are returned as lists of :class:`Polynomial` indexed by the power of ``y``.
    """
    q = [f.coeffs[i] * i for i in range(1, len(f.coeffs))]
    while q and not q[-1]:
        q.pop()
    if not q:
        raise ValueError("df/dy vanishes identically; the equation is not minimal")
    p = [c.derivative() for c in f.coeffs]
    while p and not p[-1]:
        p.pop()
    return p, q


def series_derivative_from_equation(f: AlgebraicEquation, b: TruncatedSeries) -> TruncatedSeries:
    """``b'`` computed as ``-p(t,b)/q(t,b)``; needs ``q(0, b(0)) != 0``."""
    from .series import series_inverse

    p, q = algebraic_derivative_equation(f)
    pv = evaluate_bivariate(p or [Polynomial()], b)
    qv = evaluate_bivariate(q, b)
    return -cauchy_product(pv, series_inverse(qv))


__all__ = [
    "InsufficientTermsError",
    "AlgebraicEquation",
    "GuessReport",
    "default_holdout",
    "evaluate_bivariate",
    "guess_recurrence",
    "guess_rational",
    "guess_algebraic",
    "verify_algebraic",
    "algebraic_derivative_equation",
    "series_derivative_from_equation",
]
