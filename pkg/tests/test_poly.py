import random
from fractions import Fraction

import pytest

from toricfloer.poly import (
    GroebnerBudgetError,
    NotZeroDimensionalError,
    Poly,
    buchberger,
    grevlex_key,
    lex_key,
    normal_form,
    standard_monomials,
)
from toricfloer.scalars import QQ, PrimeField


def poly(terms, nvars, dom=QQ):
    return Poly(dom, nvars, {e: dom.from_int(c) for e, c in terms.items()})


class TestNormalForm:
    def test_univariate_reduction(self):
        # y^3 mod <y^2 - 1> -> y
        g = poly({(2,): 1, (0,): -1}, 1)
        f = poly({(3,): 1}, 1)
        r = normal_form(f, [g], grevlex_key)
        assert r == poly({(1,): 1}, 1)

    def test_generator_reduces_to_zero(self):
        g = poly({(2,): 1, (0,): -1}, 1)
        assert normal_form(g, [g], grevlex_key).is_zero()

    def test_idempotent(self):
        rng = random.Random(1)
        g1 = poly({(2, 1): 1, (0, 0): -1}, 2)
        g2 = poly({(1, 2): 1, (0, 0): -1}, 2)
        basis = buchberger([g1, g2], grevlex_key)
        for _ in range(25):
            f = Poly(
                QQ,
                2,
                {
                    (rng.randint(0, 4), rng.randint(0, 4)): Fraction(rng.randint(-3, 3))
                    for _ in range(4)
                },
            )
            r = normal_form(f, basis, grevlex_key)
            assert normal_form(r, basis, grevlex_key) == r


class TestBuchberger:
    def test_cp2_relation_collapse(self):
        # y1^2 y2 - 1 and y1 y2^2 - 1 force y2 = y1 and y1^3 = 1
        g1 = poly({(2, 1): 1, (0, 0): -1}, 2)
        g2 = poly({(1, 2): 1, (0, 0): -1}, 2)
        basis = buchberger([g1, g2], grevlex_key)
        y2 = poly({(0, 1): 1}, 2)
        r = normal_form(y2, basis, grevlex_key)
        assert r == poly({(1, 0): 1}, 2)
        monos = standard_monomials(basis, 2, grevlex_key)
        assert monos == [(0, 0), (1, 0), (2, 0)]

    def test_membership_detection(self):
        g1 = poly({(2, 1): 1, (0, 0): -1}, 2)
        g2 = poly({(1, 2): 1, (0, 0): -1}, 2)
        basis = buchberger([g1, g2], grevlex_key)
        member = g1 * poly({(1, 1): 3}, 2) + g2 * poly({(0, 2): -2}, 2)
        assert normal_form(member, basis, grevlex_key).is_zero()
        assert not normal_form(poly({(1, 0): 1}, 2), basis, grevlex_key).is_zero()

    def test_finite_field_coefficients(self):
        F = PrimeField(5)
        g1 = Poly(F, 2, {(2, 1): F.one, (0, 0): -F.one})
        g2 = Poly(F, 2, {(1, 2): F.one, (0, 0): -F.one})
        basis = buchberger([g1, g2], grevlex_key)
        assert standard_monomials(basis, 2, grevlex_key) == [(0, 0), (1, 0), (2, 0)]

    def test_budget_guard(self):
        g1 = poly({(2, 1): 1, (0, 0): -1}, 2)
        g2 = poly({(1, 2): 1, (0, 0): -1}, 2)
        with pytest.raises(GroebnerBudgetError):
            buchberger([g1, g2], grevlex_key, max_steps=1)

    def test_lex_order_also_works(self):
        g1 = poly({(2, 1): 1, (0, 0): -1}, 2)
        g2 = poly({(1, 2): 1, (0, 0): -1}, 2)
        basis = buchberger([g1, g2], lex_key)
        assert len(standard_monomials(basis, 2, lex_key)) == 3

    def test_non_zero_dimensional_detected(self):
        g = poly({(1, 1): 1}, 2)  # xy: quotient infinite-dimensional
        basis = buchberger([g], grevlex_key)
        with pytest.raises(NotZeroDimensionalError):
            standard_monomials(basis, 2, grevlex_key)

    def test_reduced_basis_is_canonical(self):
        g1 = poly({(2, 1): 1, (0, 0): -1}, 2)
        g2 = poly({(1, 2): 1, (0, 0): -1}, 2)
        b1 = buchberger([g1, g2], grevlex_key)
        b2 = buchberger([g2, g1], grevlex_key)
        assert len(b1) == len(b2)
        for p, q in zip(b1, b2):
            assert p == q
