import pytest

from radaff.correspondence import find_isomorphism, verify_facts
from radaff.errors import InvalidParameters
from radaff.ff_linalg import RowVector
from radaff.gallery import (GALLERY_NAMES, all_gallery, by_name, dim_p_ring, exterior_3, poly_quotient,
                            sym4_rings, truncated_exterior)
from radaff.radical_algebra import (AbelianType, Algebra, abelian_type, annihilator, circle_order, exponent,
                                    is_nilpotent, multiply, triple_products_vanish)


def unit(d, k, p=2):
    v = [0] * d
    v[k] = 1
    return RowVector(v, p)


class TestSym4:
    def test_ring1_squares_a_to_b(self):
        ring1 = sym4_rings()[0]
        assert multiply(ring1, [1, 0], [1, 0]) == RowVector([0, 1], 2)
        assert multiply(ring1, [0, 1], [0, 1]).is_zero()

    def test_ring3_products_are_a_plus_b(self):
        ring3 = sym4_rings()[2]
        for x in ([1, 0], [0, 1]):
            for y in ([1, 0], [0, 1]):
                assert multiply(ring3, x, y) == RowVector([1, 1], 2)

    def test_all_cyclic_of_order_four(self):
        assert all(abelian_type(A) == AbelianType((4,)) for A in sym4_rings())


class TestDimP:
    def test_abelian_type_at_three(self):
        assert str(abelian_type(dim_p_ring(3))) == '9,3'

    def test_at_two_is_ring1(self):
        assert find_isomorphism(dim_p_ring(2), sym4_rings()[0]) is not None

    def test_generator_order_at_five(self):
        assert circle_order(dim_p_ring(5), [1, 0, 0, 0, 0]) == 25

    def test_non_prime(self):
        with pytest.raises(InvalidParameters):
            dim_p_ring(4)


class TestExterior:
    def test_truncated_triple_products_vanish(self):
        assert triple_products_vanish(truncated_exterior(3))

    def test_truncated_on_two_generators(self):
        A = truncated_exterior(2)
        assert A.d == 3
        assert exponent(A) == 2
        assert multiply(A, unit(3, 0), unit(3, 1)) == unit(3, 2)

    def test_truncated_needs_two_generators(self):
        with pytest.raises(InvalidParameters):
            truncated_exterior(1)

    def test_full_exterior_triple_product(self):
        A = exterior_3()
        e1, e2, e3 = unit(7, 0), unit(7, 1), unit(7, 2)
        assert multiply(A, e1, multiply(A, e2, e3)) == unit(7, 6)
        assert multiply(A, multiply(A, e1, e2), e3) == unit(7, 6)
        assert not triple_products_vanish(A)

    def test_full_exterior_nilpotency(self):
        assert is_nilpotent(exterior_3()) == (True, 4)


class TestPolyQuotient:
    def test_annihilator_dimension(self):
        assert len(annihilator(poly_quotient(5, 2))) == 3

    def test_single_generator(self):
        assert is_nilpotent(poly_quotient(3, 0)).nil_class == 4

    def test_degenerate_is_zero_algebra(self):
        assert poly_quotient(2, 1) == Algebra.zero(2, 2)

    def test_other_prime(self):
        A = poly_quotient(4, 1, 3)
        assert A.p == 3
        assert is_nilpotent(A).nil_class == 4

    @pytest.mark.parametrize('d, e', [(3, 3), (3, -1), (0, 0)])
    def test_invalid_parameters(self, d, e):
        with pytest.raises(InvalidParameters):
            poly_quotient(d, e)


class TestByName:
    @pytest.mark.parametrize('name, p, d', [
        ('sym4-2', 2, 2), ('dimp:3', 3, 3), ('truncext:3', 2, 6), ('ext3', 2, 7), ('polyq:4:1:3', 3, 4)])
    def test_resolves(self, name, p, d):
        A = by_name(name)
        assert (A.p, A.d) == (p, d)

    @pytest.mark.parametrize('name', ['sym4-4', 'dimp', 'dimp:x', 'polyq:3', 'nothing'])
    def test_unknown(self, name):
        with pytest.raises(InvalidParameters):
            by_name(name)

    def test_all_gallery(self):
        gallery = all_gallery()
        assert tuple(gallery) == GALLERY_NAMES
        for name, A in gallery.items():
            assert is_nilpotent(A).nilpotent, name
            assert verify_facts(A, seed=1).passed, name
