"""Symmetric-group characters: degrees, Littlewood-Richardson coefficients,
outer products.

Partitions are plain tuples of positive integers in weakly decreasing order
(the empty tuple is the partition of 0).  Formal sums of irreducible
characters are :class:`CharacterSum` objects.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Mapping

SYT_BUDGET = 12
LR_BUDGET = 14


class BudgetError(ValueError):
    """The requested enumeration exceeds the configured size budget."""


Partition = tuple


def partition(obj) -> Partition:
    """Normalize ``obj`` to a partition tuple.

    Accepts an iterable of ints or text such as ``"3,1,1"``, ``"3,1^2"`` or
    ``"(2^2,1^3)"``.  Zero parts are dropped.
    """
    if isinstance(obj, str):
        text = obj.strip().strip("()[]").replace(" ", "")
        parts: list[int] = []
        if text:
            for tok in text.split(","):
                m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
                if not m:
                    raise ValueError(f"bad partition token {tok!r}")
                parts += [int(m.group(1))] * int(m.group(2) or 1)
    else:
        parts = [int(x) for x in obj]
    if any(p < 0 for p in parts):
        raise ValueError("partition parts must be non-negative")
    parts = [p for p in parts if p]
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"parts must be weakly decreasing: {parts}")
    return tuple(parts)


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def hook_lengths(lam: Partition) -> list[int]:
    lam = partition(lam)
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def hook_degree(lam) -> int:
    """Degree of the irreducible character ``chi_lam`` by the hook formula."""
    lam = partition(lam)
    prod = 1
    for h in hook_lengths(lam):
        prod *= h
    return factorial(sum(lam)) // prod


def count_syt(lam) -> int:
    """Number of standard Young tableaux of shape ``lam``, by explicit enumeration."""
    lam = partition(lam)
    n = sum(lam)
    if n > SYT_BUDGET:
        raise BudgetError(f"|lambda|={n} exceeds the enumeration budget {SYT_BUDGET}")
    rows = len(lam)
    filled = [0] * rows

    def place(k: int) -> int:
        if k == n:
            return 1
        total = 0
        for i in range(rows):
            # the next entry can go at the end of row i if the row above is longer
            if filled[i] < lam[i] and (i == 0 or filled[i - 1] > filled[i]):
                filled[i] += 1
                total += place(k + 1)
                filled[i] -= 1
        return total

    return place(0)


def _lr_count(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Number of LR tableaux of shape ``nu/lam`` and content ``mu``."""
    q = len(mu)
    lam_ext = list(lam) + [0] * (len(nu) - len(lam))
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, lam_ext[r] - 1, -1)]
    filling: dict = {}
    count = [0] * (q + 1)

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        hi = q
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((r - 1, c))
        if above is not None:
            lo = above + 1
        # strict columns force the entry in row r to be at most r + 1
        hi = min(hi, r + 1)
        total = 0
        for v in range(lo, hi + 1):
            if count[v] >= mu[v - 1]:
                continue
            if v > 1 and count[v] + 1 > count[v - 1]:
                continue
            count[v] += 1
            filling[(r, c)] = v
            total += rec(idx + 1)
            del filling[(r, c)]
            count[v] -= 1
        return total

    return rec(0)


def _contains(nu: Partition, lam: Partition) -> bool:
    return len(lam) <= len(nu) and all(a <= b for a, b in zip(lam, nu))


@lru_cache(maxsize=4096)
def _lr_table(lam: Partition, mu: Partition) -> tuple:
    n = sum(lam) + sum(mu)
    out = []
    for nu in partitions(n):
        if not _contains(nu, lam) or not _contains(nu, mu) or len(nu) > len(lam) + len(mu):
            continue
        c = _lr_count(lam, mu, nu)
        if c:
            out.append((nu, c))
    return tuple(out)


class CharacterSum:
    """Formal combination ``sum m_lam chi_lam`` of irreducible ``S_n`` characters.

    Multiplicities are integers; :meth:`is_character` tells whether they are
    all non-negative (a genuine character).
    """

    __slots__ = ("n", "terms")

    def __init__(self, terms: Mapping | Iterable = (), n: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Counter = Counter()
        for lam, m in items:
            acc[partition(lam)] += int(m)
        clean = {lam: m for lam, m in acc.items() if m}
        weights = {sum(lam) for lam in clean}
        if len(weights) > 1:
            raise ValueError(f"mixed weights in a character sum: {sorted(weights)}")
        if n is None:
            n = weights.pop() if weights else 0
        elif weights and weights != {n}:
            raise ValueError(f"weight {weights} does not match n={n}")
        self.n = n
        self.terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def irreducible(cls, lam) -> "CharacterSum":
        lam = partition(lam)
        return cls({lam: 1}, sum(lam))

    @classmethod
    def zero(cls, n: int) -> "CharacterSum":
        return cls({}, n)

    def __eq__(self, other):
        if isinstance(other, CharacterSum):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"CharacterSum(0, n={self.n})"
        body = " + ".join((f"{m}*" if m != 1 else "") + f"chi{lam}" for lam, m in self.terms.items())
        return f"CharacterSum({body})"

    def __getitem__(self, lam) -> int:
        return self.terms.get(partition(lam), 0)

    def _same(self, other: "CharacterSum"):
        if self.n != other.n and self.terms and other.terms:
            raise ValueError(f"cannot add characters of S_{self.n} and S_{other.n}")
        return self.n if self.terms else other.n

    def __add__(self, other: "CharacterSum") -> "CharacterSum":
        n = self._same(other)
        acc = Counter(self.terms)
        acc.update(other.terms)
        return CharacterSum(acc, n)

    def __neg__(self):
        return CharacterSum({lam: -m for lam, m in self.terms.items()}, self.n)

    def __sub__(self, other: "CharacterSum") -> "CharacterSum":
        return self + (-other)

    def __mul__(self, k: int) -> "CharacterSum":
        return CharacterSum({lam: k * m for lam, m in self.terms.items()}, self.n)

    __rmul__ = __mul__

    def is_character(self) -> bool:
        return all(m > 0 for m in self.terms.values())

    def degree(self) -> int:
        return degree_of(self)

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"shape": list(lam), "mult": m} for lam, m in self.terms.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> "CharacterSum":
        return cls({tuple(t["shape"]): t["mult"] for t in obj["terms"]}, obj["n"])


def lr_coefficients(lam, mu) -> CharacterSum:
    """``chi_lam (outer) chi_mu = sum_nu c^nu_{lam,mu} chi_nu`` by LR tableaux."""
    lam, mu = partition(lam), partition(mu)
    n = sum(lam) + sum(mu)
    if n > LR_BUDGET:
        raise BudgetError(f"|lambda|+|mu|={n} exceeds the LR budget {LR_BUDGET}")
    return CharacterSum(dict(_lr_table(lam, mu)), n)


def outer_product(xi: CharacterSum, eta: CharacterSum) -> CharacterSum:
    """Bilinear extension of :func:`lr_coefficients` (induction from ``S_k x S_l``)."""
    n = xi.n + eta.n
    if n > LR_BUDGET:
        raise BudgetError(f"weight {n} exceeds the LR budget {LR_BUDGET}")
    acc: Counter = Counter()
    for lam, a in xi.terms.items():
        for mu, b in eta.terms.items():
            for nu, c in _lr_table(lam, mu):
                acc[nu] += a * b * c
    return CharacterSum(acc, n)


def outer_degree(d_xi: int, d_eta: int, k: int, n: int) -> int:
    """Degree of ``xi_k (outer) eta_{n-k}``: ``C(n, k) d_xi d_eta``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return comb(n, k) * d_xi * d_eta


def degree_of(cs: CharacterSum) -> int:
    return sum(m * hook_degree(lam) for lam, m in cs.terms.items())


def young_rule(n: int, mu) -> CharacterSum:
    """``chi_(n) (outer) chi_mu``: add a horizontal strip of size ``n`` to ``mu``."""
    mu = partition(mu)
    out = {}
    for nu in partitions(n + sum(mu)):
        if not _contains(nu, mu):
            continue
        ext = list(mu) + [0] * (len(nu) - len(mu))
        # horizontal strip: nu_{i+1} <= mu_i
        if all(nu[i + 1] <= ext[i] for i in range(len(nu) - 1)):
            out[nu] = 1
    return CharacterSum(out, n + sum(mu))


__all__ = [
    "BudgetError",
    "Partition",
    "partition",
    "partitions",
    "conjugate",
    "hook_lengths",
    "hook_degree",
    "count_syt",
    "CharacterSum",
    "lr_coefficients",
    "outer_product",
    "outer_degree",
    "degree_of",
    "young_rule",
]
