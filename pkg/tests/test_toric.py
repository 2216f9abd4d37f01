from fractions import Fraction

import pytest

from toricfloer.groupring import GroupRingElement
from toricfloer.scalars import QQ, NovikovField, PrimeField
from toricfloer.toric import (
    DiscClass,
    NotMonotoneError,
    Superpotential,
    ToricData,
    ToricDataError,
    basic_classes,
    build_superpotential,
    interior_contains,
    monotone_normalize,
)


class TestToricData:
    def test_rejects_nonspanning(self):
        with pytest.raises(ToricDataError):
            ToricData(2, ((1, 0), (-1, 0)), (Fraction(1), Fraction(1)))

    def test_rejects_nonpositive_area(self):
        with pytest.raises(ToricDataError):
            ToricData(1, ((1,), (-1,)), (Fraction(0), Fraction(1)))

    def test_rejects_unbounded(self):
        # half-space data: normals all on one side
        with pytest.raises(ToricDataError):
            ToricData(1, ((1,),), (Fraction(1),))
        with pytest.raises(ToricDataError):
            ToricData(2, ((1, 0), (0, 1), (1, 1)), (Fraction(1),) * 3)

    def test_accepts_desk_examples(self, cp1, cp2, cp1xcp1):
        assert cp1.n_facets == 2
        assert cp2.n_facets == 3
        assert cp1xcp1.n_facets == 4


class TestInterior:
    def test_inside(self):
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        assert interior_contains(t, (Fraction(1, 2),))

    def test_boundary_excluded(self):
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        assert not interior_contains(t, (Fraction(-1),))

    def test_eigenvalue_valuation_point(self):
        # the Novikov eigensummand of areas (1,2) sits at 1/2, interior
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        assert interior_contains(t, (Fraction(1, 2),))


class TestMonotoneNormalize:
    def test_cp1_asymmetric(self):
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(3)))
        norm, x_star, scale = monotone_normalize(t)
        assert x_star == (Fraction(1),)
        assert scale == Fraction(1, 2)
        assert set(norm.areas) == {Fraction(1)}
        assert interior_contains(t, x_star)

    def test_already_monotone(self, cp1xcp1):
        norm, x_star, scale = monotone_normalize(cp1xcp1)
        assert x_star == (Fraction(0), Fraction(0))
        assert scale == Fraction(1)

    def test_not_normalizable(self):
        # hexagon-like data with incompatible areas has no equalising point
        t = ToricData(
            2,
            ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)),
            (Fraction(1), Fraction(1), Fraction(1), Fraction(1), Fraction(1), Fraction(7)),
        )
        with pytest.raises(NotMonotoneError):
            monotone_normalize(t)


class TestSuperpotential:
    def test_cp2_monotone_form(self, cp2):
        W = build_superpotential(cp2, QQ, "monotone")
        gr = W.group_ring()
        assert gr == (
            GroupRingElement.monomial(QQ, (1, 0))
            + GroupRingElement.monomial(QQ, (0, 1))
            + GroupRingElement.monomial(QQ, (-1, -1))
        )

    def test_cp1_novikov_assembly(self, novikov_q5):
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        W = build_superpotential(t, novikov_q5, "novikov")
        gr = W.group_ring()
        assert gr.coeffs[(1,)].terms == ((Fraction(1), Fraction(1)),)
        assert gr.coeffs[(-1,)].terms == ((Fraction(2), Fraction(1)),)

    def test_correction_additivity(self, novikov_q5):
        # purely formal extra term, no pairing data
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        corr = DiscClass(Fraction(3), (0,), Fraction(5))
        W = build_superpotential(t, novikov_q5, "novikov", [corr])
        gr = W.group_ring()
        assert gr.coeffs[(0,)].terms == ((Fraction(3), Fraction(5)),)
        with pytest.raises(ToricDataError):
            W.divisor_image(0)

    def test_basic_count_invariant(self, cp2):
        W = build_superpotential(cp2, QQ, "monotone")
        gr = W.group_ring()
        assert len(gr.coeffs) == cp2.n_facets
        assert set(gr.coeffs) == {tuple(nu) for nu in cp2.normals}

    def test_monotone_rejects_corrections(self, cp1):
        corr = DiscClass(Fraction(2), (0,), Fraction(1), (1, 1))
        with pytest.raises(ToricDataError):
            build_superpotential(cp1, QQ, "monotone", [corr])

    def test_duplicate_basic_rejected(self, novikov_q5):
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        dup = DiscClass(Fraction(1), (1,), Fraction(2), (1, 0))
        with pytest.raises(ToricDataError):
            build_superpotential(t, novikov_q5, "novikov", [dup])

    def test_wrong_pairings_rejected(self, novikov_q5):
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        # pairings summing to 2 describe an index-4 class
        bad = DiscClass(Fraction(3), (0,), Fraction(1), (2, 0))
        with pytest.raises(ToricDataError):
            build_superpotential(t, novikov_q5, "novikov", [bad])
        # pairing vector inconsistent with the boundary
        bad2 = DiscClass(Fraction(3), (1,), Fraction(1), (0, 1))
        with pytest.raises(ToricDataError):
            build_superpotential(t, novikov_q5, "novikov", [bad2])

    def test_reference_translation(self, novikov_q5):
        t = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))
        W = build_superpotential(t, novikov_q5, "novikov")
        shifted = W.translate_reference((Fraction(1, 2),))
        assert [b.area for b in shifted.classes] == [Fraction(3, 2), Fraction(3, 2)]
        with pytest.raises(ToricDataError):
            W.translate_reference((Fraction(3),))
