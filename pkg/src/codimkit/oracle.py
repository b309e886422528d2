"""Brute-force codimensions of T-ideals in the multilinear space ``P_n``.

``P_n`` has the ``n!`` monomials ``x_s(1) ... x_s(n)`` as basis.  The
multilinear part of the T-ideal generated by multilinear polynomials
``g(x_1..x_d)`` is spanned by ``u g(m_1, ..., m_d) w`` where ``u, m_i, w`` are
monomials in disjoint variables covering ``x_1..x_n`` (``u``, ``w`` possibly
empty).  For a product ``T1 T2`` of T-ideals the spanning set is
``u g1(m..) v g2(m'..) w``.  Ranks are computed modulo two random 62-bit
primes, which must agree; exact rational elimination is available for small
``n``.
"""

from __future__ import annotations

import logging
import os
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial, gcd
from typing import Iterable, Iterator, Mapping, Optional

from . import linalg

log = logging.getLogger(__name__)

DEFAULT_SEED = 20240517
PRIME_BITS = 62
MAX_DEGREE = 6
MAX_PRODUCT_DEGREE = 5
MAX_EXACT_DEGREE = 4


class BudgetError(ValueError):
    pass


class RankDisagreement(RuntimeError):
    """The two modular ranks differ (a prime divided a pivot minor)."""


# --- noncommutative polynomials ------------------------------------------------

class NCPolynomial:
    """Element of the free associative algebra: ``{word: coefficient}``.

    A word is a tuple of positive variable indices (``x1`` is ``1``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for w, c in items:
            w = tuple(w)
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def var(cls, i: int) -> "NCPolynomial":
        return cls({(i,): 1})

    @classmethod
    def scalar(cls, c) -> "NCPolynomial":
        return cls({(): c})

    def __add__(self, other):
        return NCPolynomial(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return NCPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NCPolynomial):
            return NCPolynomial({w: c * other for w, c in self.terms.items()})
        return NCPolynomial([(a + b, x * y) for a, x in self.terms.items() for b, y in other.terms.items()])

    def __pow__(self, k: int):
        out = NCPolynomial.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPolynomial):
            return self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            mon = "".join(f"x{i}" for i in w) or "1"
            parts.append(f"{c}*{mon}")
        return " + ".join(parts)

    def variables(self) -> list[int]:
        return sorted({i for w in self.terms for i in w})

    def multidegree(self, w: tuple) -> tuple:
        return tuple(w.count(i) for i in self.variables())

    def is_multilinear(self) -> bool:
        vs = self.variables()
        return all(sorted(w) == vs for w in self.terms)


def commutator(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return a * b - b * a


def left_normed(*args: NCPolynomial) -> NCPolynomial:
    out = args[0]
    for b in args[1:]:
        out = commutator(out, b)
    return out


def _x(*idx):
    return [NCPolynomial.var(i) for i in idx]


def standard_polynomial(d: int) -> NCPolynomial:
    terms = {}
    for p in permutations(range(1, d + 1)):
        inv = sum(1 for i in range(d) for j in range(i + 1, d) if p[i] > p[j])
        terms[p] = -1 if inv % 2 else 1
    return NCPolynomial(terms)


BUILTINS = {
    "comm2": lambda: left_normed(*_x(1, 2)),
    "comm3": lambda: left_normed(*_x(1, 2, 3)),
    "comm4": lambda: left_normed(*_x(1, 2, 3, 4)),
    "comm5": lambda: left_normed(*_x(1, 2, 3, 4, 5)),
    "s4": lambda: standard_polynomial(4),
    "cbm": lambda: left_normed(commutator(*_x(1, 2)), commutator(*_x(3, 4)), NCPolynomial.var(5)),
    "hall": lambda: commutator(commutator(*_x(1, 2)) ** 2, NCPolynomial.var(3)),
}


# --- the generator mini-language ----------------------------------------------

_TOKEN = re.compile(r"\s*(?:(x\d+)|(\d+)|([A-Za-z_]\w*)|(.))")


class ParseError(ValueError):
    pass


def parse_polynomial(text: str) -> NCPolynomial:
    """Parse ``+ - ^``, integer coefficients, juxtaposition, ``[a,b,...]`` and ``( )``.

    Variables are ``x1`` ... ``x9``; builtin names (``comm2``, ``comm4``,
    ``comm5``, ``s4``, ``cbm``, ``hall``) may appear as atoms.
    """
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(0).strip() == "":
            continue
        var, num, name, ch = m.groups()
        if var:
            i = int(var[1:])
            if not 1 <= i <= 9:
                raise ParseError(f"variable {var} out of range x1..x9")
            toks.append(("var", i))
        elif num:
            toks.append(("num", int(num)))
        elif name:
            if name not in BUILTINS:
                raise ParseError(f"unknown name {name!r}")
            toks.append(("name", name))
        else:
            toks.append(("op", ch))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("end", None)

    def take(kind=None, val=None):
        nonlocal pos
        tok = peek()
        if (kind and tok[0] != kind) or (val is not None and tok[1] != val):
            raise ParseError(f"expected {val or kind}, got {tok[1]!r}")
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        out = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            s = take()[1]
            t = term()
            out = out + t if s == "+" else out - t
        return out

    def term():
        out = factor()
        while peek()[0] in ("var", "num", "name") or peek() in (("op", "["), ("op", "(")):
            out = out * factor()
        return out

    def factor():
        a = atom()
        if peek() == ("op", "^"):
            take()
            a = a ** take("num")[1]
        return a

    def atom():
        kind, val = peek()
        if kind == "var":
            take()
            return NCPolynomial.var(val)
        if kind == "num":
            take()
            return NCPolynomial.scalar(val)
        if kind == "name":
            take()
            return BUILTINS[val]()
        if (kind, val) == ("op", "("):
            take()
            e = expr()
            take("op", ")")
            return e
        if (kind, val) == ("op", "["):
            take()
            args = [expr()]
            while peek() == ("op", ","):
                take()
                args.append(expr())
            take("op", "]")
            if len(args) < 2:
                raise ParseError("a commutator needs at least two entries")
            return left_normed(*args)
        if kind == "end":
            raise ParseError("unexpected end of expression")
        raise ParseError(f"unexpected token {val!r}")

    if not toks:
        raise ParseError("empty expression")
    out = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input at token {toks[pos][1]!r}")
    return out


# --- multilinear elements -------------------------------------------------------

@dataclass(frozen=True)
class MultilinearElement:
    """Vector in ``P_n``: ``coords[perm]`` is the coefficient of ``x_perm[0]...x_perm[n-1]``.

    Permutations are tuples of ``1..n``.
    """

    n: int
    coords: dict

    def __post_init__(self):
        target = tuple(range(1, self.n + 1))
        for w in self.coords:
            if tuple(sorted(w)) != target:
                raise ValueError(f"{w} is not a permutation of 1..{self.n}")

    @classmethod
    def from_polynomial(cls, f: NCPolynomial) -> "MultilinearElement":
        """Relabel the variables of a multilinear ``f`` to ``1..d`` (in increasing order)."""
        if not f.terms:
            raise ValueError("zero polynomial")
        if not f.is_multilinear():
            raise ValueError("polynomial is not multilinear")
        vs = f.variables()
        relabel = {v: i + 1 for i, v in enumerate(vs)}
        return cls(len(vs), {tuple(relabel[v] for v in w): c for w, c in f.terms.items()})

    def to_polynomial(self) -> NCPolynomial:
        return NCPolynomial(self.coords)


def multilinearize(f: NCPolynomial) -> list[MultilinearElement]:
    """Full linearization of a multihomogeneous ``f``.

    A variable of degree ``k`` is replaced by ``k`` fresh variables and the
    component linear in each of them is kept (the sum over all ways of
    distributing them over the ``k`` occurrences).
    """
    if not f.terms:
        raise ValueError("zero polynomial")
    vs = f.variables()
    degs = {f.multidegree(w) for w in f.terms}
    if len(degs) != 1:
        raise ValueError("polynomial is not multihomogeneous")
    (deg,) = degs
    fresh, nxt = {}, 1
    for v, k in zip(vs, deg):
        fresh[v] = list(range(nxt, nxt + k))
        nxt += k
    out: dict = {}
    for w, c in f.terms.items():
        positions = {v: [i for i, x in enumerate(w) if x == v] for v in vs}
        assigns = [[]]
        for v in vs:
            assigns = [a + [(v, p)] for a in assigns for p in permutations(fresh[v])]
        for a in assigns:
            new = list(w)
            for v, p in a:
                for pos, y in zip(positions[v], p):
                    new[pos] = y
            key = tuple(new)
            out[key] = out.get(key, 0) + c
    return [MultilinearElement(nxt - 1, {w: c for w, c in out.items() if c})]


def restitute(m: MultilinearElement, groups: list[list[int]]) -> NCPolynomial:
    """Identify the variables in each group back to one variable ``x_{group index + 1}``."""
    back = {y: i + 1 for i, g in enumerate(groups) for y in g}
    return NCPolynomial([(tuple(back[y] for y in w), c) for w, c in m.coords.items()])


@dataclass
class GeneratorSet:
    generators: list
    labels: list = field(default_factory=list)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if isinstance(g, NCPolynomial):
                g = multilinearize(g)[0] if not g.is_multilinear() else MultilinearElement.from_polynomial(g)
            if not isinstance(g, MultilinearElement) or not g.coords:
                raise ValueError("generators must be nonzero multilinear elements")
            gens.append(g)
        self.generators = gens
        if not self.labels:
            self.labels = [f"g{i}" for i in range(len(gens))]

    @classmethod
    def parse(cls, *texts: str) -> "GeneratorSet":
        return cls([parse_polynomial(t) for t in texts], list(texts))

    @property
    def min_degree(self) -> int:
        return min(g.n for g in self.generators)


def builtin_generators(name: str) -> GeneratorSet:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin {name!r}")
    return GeneratorSet([BUILTINS[name]()], [name])


# --- spanning sets ---------------------------------------------------------------

def _compositions(n: int, nblocks: int, nonempty: tuple) -> Iterator[tuple]:
    """Lengths ``(l_0..l_{k-1})`` summing to ``n``; ``nonempty[i]`` forces ``l_i >= 1``."""
    if nblocks == 1:
        if n >= (1 if nonempty[0] else 0):
            yield (n,)
        return
    lo = 1 if nonempty[0] else 0
    for first in range(lo, n + 1):
        for rest in _compositions(n - first, nblocks - 1, nonempty[1:]):
            yield (first,) + rest


def _split(word: tuple, lengths: tuple) -> list:
    out, i = [], 0
    for l in lengths:
        out.append(word[i:i + l])
        i += l
    return out


def _substitute(g: MultilinearElement, blocks: list) -> dict:
    """``g(m_1, ..., m_d)`` as ``{word: coeff}``."""
    return {sum((blocks[v - 1] for v in w), ()): c for w, c in g.coords.items()}


def _normalize_row(row: dict) -> Optional[tuple]:
    items = sorted((k, v) for k, v in row.items() if v)
    if not items:
        return None
    g = 0
    for _, v in items:
        g = gcd(g, v)
    if items[0][1] < 0:
        g = -g
    return tuple((k, v // g) for k, v in items)


def _ideal_rows(gens: list, n: int) -> Iterator[dict]:
    for g in gens:
        d = g.n
        if d > n:
            continue
        shapes = list(_compositions(n, d + 2, (False,) + (True,) * d + (False,)))
        for word in permutations(range(1, n + 1)):
            for lengths in shapes:
                parts = _split(word, lengths)
                u, blocks, w = parts[0], parts[1:-1], parts[-1]
                yield {u + k + w: c for k, c in _substitute(g, blocks).items()}


def _product_rows(gens1: list, gens2: list, n: int) -> Iterator[dict]:
    for g1 in gens1:
        for g2 in gens2:
            d1, d2 = g1.n, g2.n
            if d1 + d2 > n:
                continue
            pattern = (False,) + (True,) * d1 + (False,) + (True,) * d2 + (False,)
            shapes = list(_compositions(n, d1 + d2 + 3, pattern))
            for word in permutations(range(1, n + 1)):
                for lengths in shapes:
                    parts = _split(word, lengths)
                    u = parts[0]
                    b1 = parts[1:1 + d1]
                    v = parts[1 + d1]
                    b2 = parts[2 + d1:2 + d1 + d2]
                    w = parts[-1]
                    f1 = _substitute(g1, b1)
                    f2 = _substitute(g2, b2)
                    row: dict = {}
                    for k1, c1 in f1.items():
                        for k2, c2 in f2.items():
                            key = u + k1 + v + k2 + w
                            row[key] = row.get(key, 0) + c1 * c2
                    yield row


def _column_index(n: int) -> dict:
    return {p: i for i, p in enumerate(permutations(range(1, n + 1)))}


def _integer_rows(rows: Iterable[dict], n: int) -> list:
    """Deduplicated primitive rows as ``{column: int}``."""
    col = _column_index(n)
    seen = set()
    out = []
    for row in rows:
        if any(isinstance(v, Fraction) and v.denominator != 1 for v in row.values()):
            den = 1
            for v in row.values():
                den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
            row = {k: int(v * den) for k, v in row.items()}
        key = _normalize_row({col[k]: int(v) for k, v in row.items()})
        if key is None or key in seen:
            continue
        seen.add(key)
        out.append(dict(key))
    return out


# --- ranks -------------------------------------------------------------------------

def oracle_primes(seed: int) -> list[int]:
    rng = random.Random(seed)
    p1 = linalg.random_prime(PRIME_BITS, rng)
    p2 = p1
    while p2 == p1:
        p2 = linalg.random_prime(PRIME_BITS, rng)
    return [p1, p2]


def _rank_job(args) -> int:
    rows, p, ncols = args
    return linalg.rank_mod_p(rows, p, ncols)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("CODIMKIT_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class Subspace:
    """Multilinear component of a T-ideal in degree ``n``."""

    n: int
    rank: int
    primes: list
    seed: int
    rows: int
    exact_rank: Optional[int] = None
    basis: Optional[list] = None

    @property
    def codimension(self) -> int:
        return factorial(self.n) - self.rank

    def to_json(self) -> dict:
        out = {"n": self.n, "rank": self.rank, "codimension": self.codimension,
               "primes": self.primes, "seed": self.seed}
        if self.exact_rank is not None:
            out["exact_rank"] = self.exact_rank
        return out


def _span(rows: list, n: int, seed: int, exact: bool, workers: Optional[int]) -> Subspace:
    ncols = factorial(n)
    primes = oracle_primes(seed)
    log.info("multilinear oracle: n=%d rows=%d seed=%d primes=%s", n, len(rows), seed, primes)
    workers = _workers() if workers is None else workers
    jobs = [(rows, p, ncols) for p in primes]
    if workers > 1 and len(rows) > 2000:
        with ProcessPoolExecutor(max_workers=min(workers, 2)) as ex:
            ranks = list(ex.map(_rank_job, jobs))
    else:
        ranks = [_rank_job(j) for j in jobs]
    if ranks[0] != ranks[1]:
        raise RankDisagreement(f"ranks {ranks} differ modulo primes {primes}")
    sub = Subspace(n, ranks[0], primes, seed, len(rows))
    if exact:
        if n > MAX_EXACT_DEGREE:
            raise BudgetError(f"exact elimination is limited to n <= {MAX_EXACT_DEGREE}")
        dense = [[r.get(c, 0) for c in range(ncols)] for r in rows]
        R, pivots = linalg.rref(dense) if dense else ([], [])
        sub.exact_rank = len(pivots)
        perms = list(_column_index(n))
        sub.basis = [MultilinearElement(n, {perms[c]: x for c, x in enumerate(row) if x}) for row in R]
        if sub.exact_rank != sub.rank:
            raise RankDisagreement(f"exact rank {sub.exact_rank} differs from modular rank {sub.rank}")
    return sub


def _as_generators(g) -> GeneratorSet:
    if isinstance(g, GeneratorSet):
        return g
    if isinstance(g, str):
        return builtin_generators(g) if g in BUILTINS else GeneratorSet.parse(g)
    return GeneratorSet(list(g))


def tideal_multilinear_span(g, n: int, seed: int = DEFAULT_SEED, exact: bool = False,
                            workers: Optional[int] = None) -> Subspace:
    g = _as_generators(g)
    if n > MAX_DEGREE:
        raise BudgetError(f"degree {n} exceeds the oracle budget {MAX_DEGREE}")
    rows = _integer_rows(_ideal_rows(g.generators, n), n) if n else []
    return _span(rows, n, seed, exact, workers)


def product_ideal_multilinear_span(g1, g2, n: int, seed: int = DEFAULT_SEED, exact: bool = False,
                                   allow_degree_6: bool = False, workers: Optional[int] = None) -> Subspace:
    g1, g2 = _as_generators(g1), _as_generators(g2)
    limit = 6 if allow_degree_6 else MAX_PRODUCT_DEGREE
    if n > limit:
        raise BudgetError(f"degree {n} exceeds the product oracle budget {limit}")
    rows = _integer_rows(_product_rows(g1.generators, g2.generators, n), n) if n else []
    return _span(rows, n, seed, exact, workers)


def codimension(g, n: int, *, times=None, seed: int = DEFAULT_SEED, exact: bool = False,
                allow_degree_6: bool = False) -> int:
    """``c_n = n! - dim(P_n intersect T)`` for ``T = (g)^T`` or ``T = (g)^T (times)^T``."""
    if times is None:
        return tideal_multilinear_span(g, n, seed, exact).codimension
    return product_ideal_multilinear_span(g, times, n, seed, exact, allow_degree_6).codimension


__all__ = [
    "NCPolynomial",
    "commutator",
    "left_normed",
    "standard_polynomial",
    "BUILTINS",
    "parse_polynomial",
    "ParseError",
    "MultilinearElement",
    "multilinearize",
    "restitute",
    "GeneratorSet",
    "builtin_generators",
    "Subspace",
    "oracle_primes",
    "tideal_multilinear_span",
    "product_ideal_multilinear_span",
    "codimension",
    "BudgetError",
    "RankDisagreement",
    "DEFAULT_SEED",
]
