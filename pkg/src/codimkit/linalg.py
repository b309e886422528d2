"""Exact linear algebra: fraction-free elimination over Z/Q and rank mod p."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        m = 1
        for x in row:
            m = lcm(m, x.denominator)
        out.append([int(x * m) for x in row])
    return out


def bareiss_echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Row echelon form by Bareiss fraction-free elimination.

    Returns the nonzero echelon rows (integers) and their pivot columns.
    Every intermediate entry is a minor of the input, so integer growth is
    polynomial.
    """
    M = _integer_rows(rows)
    if not M:
        return [], []
    ncols = len(M[0])
    nrows = len(M)
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        a = pr[c]
        for i in range(r + 1, nrows):
            row = M[i]
            b = row[c]
            if b:
                M[i] = [(a * row[j] - b * pr[j]) // prev for j in range(ncols)]
            elif a != prev:
                M[i] = [(a * x) // prev for x in row]
        prev = a
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(bareiss_echelon(rows)[1])


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q."""
    ech, pivots = bareiss_echelon(rows)
    R = [[Fraction(x, row[p]) for x in row] for row, p in zip(ech, pivots)]
    for i in range(len(R) - 1, -1, -1):
        p = pivots[i]
        for k in range(i):
            f = R[k][p]
            if f:
                R[k] = [x - f * y for x, y in zip(R[k], R[i])]
    return R, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``A x = b`` (free variables set to 0), or None."""
    if not A:
        return None
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def primitive_integer_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers with positive last nonzero entry."""
    v = [Fraction(x) for x in v]
    m = 1
    for x in v:
        m = lcm(m, x.denominator)
    w = [int(x * m) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return w
    w = [x // g for x in w]
    last = next(x for x in reversed(w) if x)
    if last < 0:
        w = [-x for x in w]
    return w


# --- modular rank -----------------------------------------------------------

def random_prime(bits: int, rng: random.Random) -> int:
    """A random prime in ``[2**(bits-1), 2**bits)`` (Miller-Rabin, deterministic bases)."""
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(n):
            return n


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # these bases are a proof of primality below 3.3e24
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModularEchelon:
    """Incremental echelon basis of sparse vectors over GF(p).

    Pivot rows are kept fully reduced against each other, so inserting a row
    costs one sweep over the pivots it touches.
    """

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, int]) -> dict[int, int]:
        p = self.p
        v = {k: x % p for k, x in vec.items() if x % p}
        pivots = self.rows
        for c in sorted(k for k in v if k in pivots):
            f = v.get(c)
            if not f:
                continue
            for k, x in pivots[c].items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def insert(self, vec: Mapping[int, int]) -> bool:
        """Add ``vec`` to the span; True if the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = self.p
        c = min(v)
        inv = pow(v[c], -1, p)
        v = {k: x * inv % p for k, x in v.items()}
        for r in self.rows.values():
            f = r.get(c)
            if f:
                for k, x in v.items():
                    y = (r.get(k, 0) - f * x) % p
                    if y:
                        r[k] = y
                    else:
                        r.pop(k, None)
        self.rows[c] = v
        return True


def rank_mod_p(rows: Iterable[Mapping[int, int]], p: int, ncols: int | None = None) -> int:
    ech = ModularEchelon(p)
    for r in rows:
        ech.insert(r)
        if ncols is not None and ech.rank == ncols:
            break
    return ech.rank
