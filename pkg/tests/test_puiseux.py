from fractions import Fraction

import pytest

from toricfloer.puiseux import SplitFieldError, novikov_roots
from toricfloer.scalars import Novikov, NovikovField, PrimeField, QQ


def ndom(prec=5, base=QQ):
    return NovikovField(base, Fraction(prec))


def c(dom, x):
    return dom.from_int(x)


class TestNewtonPolygonRoots:
    def test_square_root_of_t(self):
        nd = ndom()
        # x^2 - T
        roots = novikov_roots([-nd.monomial(1), nd.zero, nd.one], nd)
        assert len(roots) == 2
        vals = sorted(r.terms[0] for r, _ in roots)
        assert vals == [(Fraction(1, 2), Fraction(-1)), (Fraction(1, 2), Fraction(1))]
        for r, m in roots:
            assert m == 1
            assert (r * r - nd.monomial(1)).is_zero()

    def test_distinct_integer_valuations(self):
        nd = ndom(8)
        # (x - T)(x - T^2) = x^2 - (T + T^2) x + T^3
        p = [nd.monomial(3), -(nd.monomial(1) + nd.monomial(2)), nd.one]
        roots = novikov_roots(p, nd)
        assert sorted(r.val() for r, _ in roots) == [1, 2]
        for r, _ in roots:
            val = (r - nd.monomial(1)) * (r - nd.monomial(2))
            assert val.is_zero()

    def test_exact_double_root(self):
        nd = ndom()
        # (x - T^(1/2))^2 = x^2 - 2 T^(1/2) x + T
        half = nd.monomial(Fraction(1, 2))
        p = [nd.monomial(1), -(half + half), nd.one]
        roots = novikov_roots(p, nd)
        assert len(roots) == 1
        r, m = roots[0]
        assert m == 2
        assert r.same_mod_prec(half)

    def test_unit_root_with_higher_corrections(self):
        nd = ndom(6)
        # x^2 - (1 + T): roots are +-(1 + T/2 - T^2/8 + ...)
        p = [-(nd.one + nd.monomial(1)), nd.zero, nd.one]
        roots = novikov_roots(p, nd)
        assert len(roots) == 2
        for r, m in roots:
            assert m == 1
            assert (r * r - (nd.one + nd.monomial(1))).is_zero()
            assert r.coeff(1) in (Fraction(1, 2), Fraction(-1, 2))

    def test_nonsplit_residual_raises(self):
        nd = ndom(5, PrimeField(5))
        # x^2 - 2: 2 is not a square mod 5
        p = [-(nd.from_int(2)), nd.zero, nd.one]
        with pytest.raises(SplitFieldError):
            novikov_roots(p, nd)

    def test_zero_roots_counted(self):
        nd = ndom()
        # x^2 (x - T)
        p = [nd.zero, nd.zero, -nd.monomial(1), nd.one]
        roots = novikov_roots(p, nd)
        mults = {r.is_zero(): m for r, m in roots}
        assert mults[True] == 2
        assert mults[False] == 1

    def test_residual_split_over_extension(self):
        from toricfloer.scalars import ExtensionField

        nd = ndom(5, ExtensionField(5, 2))
        two = nd.from_int(2)
        p = [-two, nd.zero, nd.one]
        roots = novikov_roots(p, nd)
        assert len(roots) == 2
        for r, _ in roots:
            assert (r * r - two).is_zero()
