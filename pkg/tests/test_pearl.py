import random
from fractions import Fraction

import pytest

from toricfloer import floer, pearl
from toricfloer.jacobian import QuotientAlgebra, decompose
from toricfloer.scalars import PrimeField, QQ
from toricfloer.toric import DiscClass, ToricData, build_superpotential


@pytest.fixture(scope="module")
def cp1_md():
    # the worked n=1 data: q=2/5, V=1/3, lambda=1/10
    return pearl.MorseData(1, (Fraction(2, 5),), (Fraction(1, 3),), Fraction(1, 10))


class TestConditions:
    def test_worked_example_valid(self, cp1, cp1_md):
        report = pearl.verify_morse_data(cp1_md, cp1)
        assert report.all_pass

    def test_base_point_margin(self, cp1_md):
        # condition (ii): [-lambda V, lambda V] = [-1/30, 1/30] misses 2/5
        assert not pearl.condition_ii(cp1_md)

    def test_lambda_half_rejected(self, cp1):
        md = pearl.MorseData(1, (Fraction(2, 5),), (Fraction(1, 3),), Fraction(1, 2))
        assert not pearl.condition_i(md)
        assert not pearl.verify_morse_data(md, cp1).all_pass

    def test_cp2_l2_disjointness(self, cp2):
        # q = (2/5, 3/7): theta = -2/5 and theta = -3/7 mod 1 are incompatible
        md = pearl.MorseData(
            2, (Fraction(2, 5), Fraction(3, 7)), (Fraction(1, 5), Fraction(1, 7)), Fraction(1, 10)
        )
        assert not pearl.base_curves_avoid_l2(md, cp2)
        assert pearl.verify_morse_data(md, cp2).all_pass

    def test_l2_violation_detected(self, cp2):
        # equal coordinates: C_3(3/5) = (2/5, 2/5) lands on the ascending set
        md = pearl.MorseData(
            2, (Fraction(2, 5), Fraction(2, 5)), (Fraction(1, 5), Fraction(1, 7)), Fraction(1, 10)
        )
        fails = pearl.base_curves_avoid_l2(md, cp2)
        assert (2, 0, 1) in fails

    def test_banded_l2_threshold(self, cp2):
        # with q_2 = 1/5 and V = (1/2, 1/2), the band meets {t_2 = q_2} at
        # s = 2/5, so exactly the bounds >= 2/5 fail condition (iii)
        q = (Fraction(2, 5), Fraction(1, 5))
        v = (Fraction(1, 2), Fraction(1, 2))
        narrow = pearl.MorseData(2, q, v, Fraction(1, 50))
        assert not pearl.base_curves_avoid_l2(narrow, cp2, band=narrow.bound)
        wide = pearl.MorseData(2, q, v, Fraction(12, 25))
        fails = pearl.base_curves_avoid_l2(wide, cp2, band=wide.bound)
        assert (0, 0, 1) in fails

    def test_degenerate_direction_flagged(self, cp1):
        md = pearl.MorseData(1, (Fraction(2, 5),), (Fraction(0),), Fraction(1, 10))
        assert pearl.degenerate_direction_components(md) == [0]
        assert not pearl.verify_morse_data(md, cp1).all_pass

    def test_chooser_deterministic_and_valid(self, cp1, cp2):
        for toric in (cp1, cp2):
            a = pearl.choose_morse_data(toric, 5)
            b = pearl.choose_morse_data(toric, 5)
            assert a == b
            assert pearl.verify_morse_data(a, toric).all_pass
            c = pearl.choose_morse_data(toric, 6)
            assert pearl.verify_morse_data(c, toric).all_pass


class TestEnumeration:
    def test_double_cover_single_input(self, cp1_md):
        beta = DiscClass(Fraction(1), (2,), QQ.one, (1, 0))
        assert pearl.enumerate_class_a(cp1_md, beta, (1,), (Fraction(0),)) == 2

    def test_double_cover_two_inputs(self, cp1_md):
        beta = DiscClass(Fraction(1), (2,), QQ.one, (1, 0))
        eps = (Fraction(1, 100), Fraction(1, 50))
        assert pearl.enumerate_class_a(cp1_md, beta, (1, 1), eps) == 1

    def test_negative_boundary(self, cp1_md):
        beta = DiscClass(Fraction(1), (-1,), QQ.one, (0, 1))
        eps = (Fraction(1, 100), Fraction(1, 50))
        assert pearl.enumerate_class_a(cp1_md, beta, (1, 1), eps) == 1

    def test_zero_pairing_gives_zero(self, cp2):
        md = pearl.choose_morse_data(cp2, 3)
        beta = DiscClass(Fraction(1), (1, 0), QQ.one, (1, 0, 0))
        assert pearl.enumerate_class_a(md, beta, (2,), (Fraction(0),)) == 0

    def test_perturbation_validation(self, cp1_md):
        beta = DiscClass(Fraction(1), (1,), QQ.one, (1, 0))
        with pytest.raises(pearl.PerturbationError):
            pearl.enumerate_class_a(cp1_md, beta, (1, 1), (Fraction(1, 50), Fraction(1, 100)))
        with pytest.raises(pearl.PerturbationError):
            pearl.enumerate_class_a(cp1_md, beta, (1,), (Fraction(1, 2),))

    def test_tuple_counts_examples(self):
        assert pearl.tuple_counts(3, 2) == (3, 3)
        assert pearl.tuple_counts(-1, 2) == (1, 1)
        assert pearl.tuple_counts(2, 3) == (0, 0)

    def test_tuple_counts_binomial_identity(self):
        from math import comb

        for p in range(1, 6):
            for c in range(0, 6):
                raw, signed = pearl.tuple_counts(-p, c)
                assert raw == comb(p + c - 1, c)
                assert signed == floer.int_binomial(-p, c)


class TestOracle:
    def test_cp1_sweep_epsilon_invariance(self, cp1, cp1_md):
        rng = random.Random(21)
        q = QuotientAlgebra(build_superpotential(cp1, PrimeField(5), "monotone"))
        s = decompose(q)[0]
        char = floer.action_from_summand(s).character
        report = pearl.oracle_compare(cp1_md, q.W, char, 4, rng, resamples=20)
        assert report.all_match
        for entry in report.entries:
            assert len(set(entry.counts)) == 1  # independent of the offsets

    def test_cp2_sweep(self, cp2):
        rng = random.Random(22)
        md = pearl.choose_morse_data(cp2, 4)
        q = QuotientAlgebra(build_superpotential(cp2, PrimeField(7), "monotone"))
        s = decompose(q)[0]
        char = floer.action_from_summand(s).character
        report = pearl.oracle_compare(md, q.W, char, 2, rng, resamples=5)
        assert report.all_match

    def test_emptiness_report(self, cp1, cp1_md):
        assert pearl.emptiness_checks(cp1_md, cp1).all_pass
