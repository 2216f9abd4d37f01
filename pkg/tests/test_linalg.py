import random
from fractions import Fraction

import pytest

from toricfloer import linalg, unipoly
from toricfloer.scalars import QQ, NovikovField, PrimeField


class TestElimination:
    def test_inverse_round_trip(self):
        rng = random.Random(3)
        for dom in (QQ, PrimeField(7)):
            for _ in range(20):
                n = rng.choice([2, 3])
                m = [[dom.from_int(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
                try:
                    inv = linalg.inverse(dom, m)
                except ZeroDivisionError:
                    continue
                assert linalg.mat_eq(dom, linalg.mat_mul(dom, m, inv), linalg.identity(dom, n))

    def test_kernel_dimension(self):
        m = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
        basis = linalg.kernel_basis(QQ, m)
        assert len(basis) == 2
        for v in basis:
            assert all(x == 0 for x in linalg.mat_vec(QQ, m, v))

    def test_solve_inconsistent(self):
        m = [[Fraction(1)], [Fraction(1)]]
        assert linalg.solve(QQ, m, [Fraction(1), Fraction(2)]) is None

    def test_rank(self):
        m = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)], [Fraction(1), Fraction(1)]]
        assert linalg.rank(QQ, m) == 2


class TestCharpoly:
    def test_diagonal(self):
        m = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(3)]]
        cp = linalg.charpoly(QQ, m)
        # (x-2)(x-3) = 6 - 5x + x^2
        assert cp == [Fraction(6), Fraction(-5), Fraction(1)]

    def test_companion_of_quadratic(self):
        # companion of x^2 - x - 1
        m = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(1)]]
        cp = linalg.charpoly(QQ, m)
        assert cp == [Fraction(-1), Fraction(-1), Fraction(1)]

    def test_cayley_hamilton_randomized(self):
        rng = random.Random(4)
        for dom in (QQ, PrimeField(5), PrimeField(2)):
            for _ in range(15):
                n = rng.choice([2, 3])
                m = [[dom.from_int(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
                cp = linalg.charpoly(dom, m)
                acc = linalg.zeros(dom, n, n)
                for i, c in enumerate(cp):
                    acc = linalg.mat_add(acc, linalg.mat_scale(linalg.mat_pow(dom, m, i), c))
                assert linalg.mat_eq(dom, acc, linalg.zeros(dom, n, n))

    def test_novikov_companion(self):
        nd = NovikovField(QQ, Fraction(5))
        m = [[nd.zero, nd.monomial(1)], [nd.one, nd.zero]]
        cp = linalg.charpoly(nd, m)
        assert cp[2].same_mod_prec(nd.one)
        assert cp[1].is_zero()
        assert cp[0].same_mod_prec(-nd.monomial(1))

    def test_novikov_pivoting_prefers_low_valuation(self):
        nd = NovikovField(QQ, Fraction(6))
        # without valuation pivoting the T^3 entry would be chosen first
        m = [
            [nd.monomial(3), nd.one],
            [nd.one, nd.zero],
        ]
        inv = linalg.inverse(nd, m)
        prod = linalg.mat_mul(nd, m, inv)
        assert linalg.mat_eq(nd, prod, linalg.identity(nd, 2))


class TestUnipoly:
    def test_roots_over_prime_field(self):
        F = PrimeField(5)
        # x^2 - 1 = (x-1)(x+1)
        coeffs = [-F.one, F.zero, F.one]
        roots, cof = unipoly.roots_in_field(F, coeffs)
        assert sorted(r.val for r, _ in roots) == [1, 4]
        assert unipoly.degree(cof) == 0

    def test_nonsplit_cofactor(self):
        F = PrimeField(5)
        # x^3 - 1 has one root and an irreducible quadratic cofactor
        coeffs = [-F.one, F.zero, F.zero, F.one]
        roots, cof = unipoly.roots_in_field(F, coeffs)
        assert [(r.val, m) for r, m in roots] == [(1, 1)]
        assert unipoly.degree(cof) == 2

    def test_rational_roots_with_multiplicity(self):
        # (x - 1/2)^2 (x + 3) = x^3 + 2x^2 - 11/4 x + 3/4
        f = [Fraction(3, 4), Fraction(-11, 4), Fraction(2), Fraction(1)]
        roots, cof = unipoly.roots_in_field(QQ, f)
        assert unipoly.degree(cof) == 0
        as_dict = {r: m for r, m in roots}
        assert as_dict[Fraction(1, 2)] == 2
        assert as_dict[Fraction(-3)] == 1

    def test_gcd(self):
        f = [Fraction(-1), Fraction(0), Fraction(1)]  # x^2 - 1
        g = [Fraction(1), Fraction(1)]  # x + 1
        assert unipoly.gcd_poly(QQ, f, g) == [Fraction(1), Fraction(1)]
