from collections import Counter
from itertools import product
from math import comb, factorial

import pytest

from codimkit.characters import (
    BudgetError,
    CharacterSum,
    conjugate,
    count_syt,
    degree_of,
    hook_degree,
    lr_coefficients,
    outer_degree,
    outer_product,
    partition,
    partitions,
    young_rule,
)

chi = CharacterSum.irreducible
NVARS = 6


# --- brute-force Schur polynomial oracle ---------------------------------------

def schur(lam, k=NVARS) -> Counter:
    """Monomial expansion of s_lam(x_1..x_k) by enumerating semistandard tableaux."""
    cells = [(r, c) for r in range(len(lam)) for c in range(lam[r])]
    out: Counter = Counter()
    fill = {}

    def rec(i):
        if i == len(cells):
            exps = [0] * k
            for v in fill.values():
                exps[v] += 1
            out[tuple(exps)] += 1
            return
        r, c = cells[i]
        lo = 0
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        for v in range(lo, k):
            fill[(r, c)] = v
            rec(i + 1)
        fill.pop((r, c), None)

    rec(0)
    return out


def poly_mul(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return out


def schur_decompose(f: Counter) -> dict:
    """Peel off the lexicographically largest monomial (always a partition)."""
    f = Counter({e: c for e, c in f.items() if c})
    out = {}
    while f:
        lead = max(f)
        c = f[lead]
        nu = partition(lead)
        out[nu] = c
        for e, m in schur(nu).items():
            f[e] -= c * m
        f = Counter({e: x for e, x in f.items() if x})
    return out


# --- tests -----------------------------------------------------------------------

class TestPartitions:
    def test_parse(self):
        assert partition("3,1^2") == (3, 1, 1)
        assert partition("(2^2,1^3)") == (2, 2, 1, 1, 1)
        assert partition([3, 0, 1]) == (3, 1)
        with pytest.raises(ValueError):
            partition("2,4")

    def test_counts(self):
        assert [len(list(partitions(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]

    def test_conjugate(self):
        assert conjugate((3, 1)) == (2, 1, 1)


class TestDegrees:
    def test_examples(self):
        assert hook_degree((3, 3)) == 5
        assert all(hook_degree((k, k)) == comb(2 * k, k) // (k + 1) for k in range(1, 8))
        assert hook_degree((7,)) == 1
        assert hook_degree((2, 1)) == 2

    def test_syt_examples(self):
        assert count_syt((2, 2)) == 2
        assert count_syt((1, 1, 1)) == 1
        assert count_syt((3, 2, 1)) == 16

    def test_hook_equals_syt(self):
        for n in range(11):
            for lam in partitions(n):
                assert hook_degree(lam) == count_syt(lam)

    def test_regular_representation(self):
        for n in range(11):
            assert sum(hook_degree(lam) ** 2 for lam in partitions(n)) == factorial(n)

    def test_syt_budget(self):
        with pytest.raises(BudgetError):
            count_syt((13,))


class TestLR:
    def test_pieri(self):
        assert lr_coefficients((1,), (1,)) == chi((2,)) + chi((1, 1))

    def test_21_squared(self):
        c = lr_coefficients((2, 1), (2, 1))
        assert c[(3, 2, 1)] == 2
        for nu in [(4, 2), (4, 1, 1), (3, 3), (3, 1, 1, 1), (2, 2, 2), (2, 2, 1, 1)]:
            assert c[nu] == 1
        assert degree_of(c) == 80

    def test_young_rule(self):
        for n in range(1, 4):
            for mu in [(2, 1), (3,), (1, 1, 1), (2, 2)]:
                assert lr_coefficients((n,), mu) == young_rule(n, mu)

    def test_against_schur_oracle(self):
        for a in range(1, 6):
            for b in range(1, 7 - a):
                for lam in partitions(a):
                    for mu in partitions(b):
                        expect = schur_decompose(poly_mul(schur(lam), schur(mu)))
                        assert lr_coefficients(lam, mu).terms == dict(sorted(expect.items(), reverse=True))

    def test_degree_identity_and_symmetry(self):
        for a in range(10):
            for b in range(10 - a):
                for lam in partitions(a):
                    for mu in partitions(b):
                        c = lr_coefficients(lam, mu)
                        assert degree_of(c) == comb(a + b, a) * hook_degree(lam) * hook_degree(mu)
                        assert c == lr_coefficients(mu, lam)

    def test_budget(self):
        with pytest.raises(BudgetError):
            lr_coefficients((8,), (7,))


class TestOuter:
    def test_examples(self):
        assert outer_product(chi((1,)), chi((1,))) == chi((2,)) + chi((1, 1))
        assert outer_product(chi((2,)) + chi((1, 1)), chi((1,))) == chi((3,)) + chi((2, 1)) * 2 + chi((1, 1, 1))
        assert outer_product(chi((2, 2)), chi(())) == chi((2, 2))

    def test_associative(self):
        shapes = [(2,), (1, 1), (2, 1), (1,), (3,), (2, 2)]
        for x, y, z in product(shapes, repeat=3):
            if sum(x) + sum(y) + sum(z) > 8:
                continue
            a, b, c = chi(x), chi(y), chi(z)
            assert outer_product(outer_product(a, b), c) == outer_product(a, outer_product(b, c))

    def test_outer_degree(self):
        assert outer_degree(1, 1, 1, 2) == 2
        assert outer_degree(2, 2, 3, 6) == 80
        assert outer_degree(1, 7, 0, 4) == 7


class TestCharacterSum:
    def test_degree_examples(self):
        assert degree_of(chi((2,)) + chi((1, 1))) == 2
        row5 = CharacterSum({(3, 2): 1, (3, 1, 1): 1, (2, 2, 1): 1, (2, 1, 1, 1): 1})
        assert degree_of(row5) == 20
        assert degree_of(CharacterSum.zero(4)) == 0

    def test_json(self):
        c = CharacterSum({(3, 3): 1, (4, 1, 1): 2})
        assert c.to_json() == {"n": 6, "terms": [{"shape": [4, 1, 1], "mult": 2}, {"shape": [3, 3], "mult": 1}]}
        assert CharacterSum.from_json(c.to_json()) == c

    def test_mixed_weights(self):
        with pytest.raises(ValueError):
            CharacterSum({(2,): 1, (1,): 1})

    def test_is_character(self):
        assert (chi((2,)) - chi((1, 1))).is_character() is False
        assert chi((2,)).is_character()
