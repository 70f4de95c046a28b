import pytest

from radaff.affine_group import (AffineElement, commutator, generate, intersect_translations,
                                 is_abelian, is_regular, linear_map, translation, translation_group,
                                 translations_normalize)
from radaff.correspondence import (RegularSubgroup, are_conjugate_by_exhaustion, conjugacy_to_iso,
                                   conjugate_subgroup, find_isomorphism, is_isomorphism, iso_to_conjugacy,
                                   ring_to_subgroup, subgroup_to_ring, verify_facts, verify_group_facts)
from radaff.errors import BoundExceeded, NotAbelian, NotRadical, NotRegular, Singular
from radaff.ff_linalg import Matrix, RowVector, all_vectors
from radaff.gallery import dim_p_ring, exterior_3, poly_quotient, truncated_exterior
from radaff.radical_algebra import Algebra, annihilator, multiply, triple_products_vanish

SWAP = Matrix([[0, 1], [1, 0]], 2)


class TestRingToSubgroup:
    def test_zero_algebra_gives_translations(self, zero22):
        T = ring_to_subgroup(zero22)
        assert T.as_subgroup() == translation_group(2, 2)

    def test_ring1_gives_cyclic_group(self, rings):
        S = ring_to_subgroup(rings[0]).as_subgroup()
        S.validate()
        assert is_regular(S) and is_abelian(S)
        assert any(g.linear != Matrix.identity(2, 2) and S == generate([g]) for g in S)

    def test_four_regular_subgroups_of_sym4(self, rings, zero22):
        subgroups = {frozenset(ring_to_subgroup(A).as_subgroup().elements) for A in rings + [zero22]}
        assert len(subgroups) == 4

    def test_tau_sends_zero_to_x(self, rings):
        T = ring_to_subgroup(rings[2])
        for x in all_vectors(2, 2):
            x = RowVector(x, 2)
            assert T.tau(x)(RowVector.zero(2, 2)) == x

    def test_not_radical(self):
        idempotent = Algebra.from_products(2, 1, {(0, 0): [1]})
        with pytest.raises(NotRadical):
            ring_to_subgroup(idempotent)

    def test_singular_tau_reports_not_radical(self):
        idempotent = Algebra.from_products(2, 1, {(0, 0): [1]})
        with pytest.raises(NotRadical):
            RegularSubgroup(idempotent).tau(RowVector([1], 2))

    def test_elements_bound(self):
        with pytest.raises(BoundExceeded):
            RegularSubgroup(dim_p_ring(5)).elements(max_elements=100)


class TestSubgroupToRing:
    def test_translations_give_zero_algebra(self):
        assert subgroup_to_ring(translation_group(2, 2)) == Algebra.zero(2, 2)

    def test_cyclic_subgroup_gives_ring1(self, rings):
        # 0 -> a -> b -> a + b -> 0
        g = next(t for t in ring_to_subgroup(rings[0]).as_subgroup() if t.zero_image() == RowVector([1, 0], 2))
        C = generate([g])
        assert subgroup_to_ring(C) == rings[0]

    def test_round_trip_gallery(self, gallery):
        for name, A in gallery.items():
            assert subgroup_to_ring(ring_to_subgroup(A, verify=False).as_subgroup()) == A, name

    def test_accepts_plain_element_lists(self, rings):
        elements = list(ring_to_subgroup(rings[1]).elements().values())
        assert subgroup_to_ring(elements) == rings[1]

    def test_not_regular(self):
        S = generate([linear_map(SWAP)])
        with pytest.raises(NotRegular):
            subgroup_to_ring(S)

    def test_not_abelian(self):
        # translations by e1, e2 and z -> z A + e3 with A swapping e1 and e2: regular, dihedral of order 8
        A = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 2)
        S = generate([translation(RowVector([1, 0, 0], 2)), translation(RowVector([0, 1, 0], 2)),
                      AffineElement(A, RowVector([0, 0, 1], 2))])
        assert S.order == 8
        assert is_regular(S)
        assert not is_abelian(S)
        with pytest.raises(NotAbelian):
            subgroup_to_ring(S)


class TestFacts:
    def test_gallery_facts_hold(self, small_gallery):
        for name, A in small_gallery.items():
            report = verify_facts(A)
            assert report.exhaustive, name
            assert report.passed, name
            assert report.summary() == '4/4'

    def test_zero_algebra_facts(self, zero22):
        assert verify_facts(zero22).passed

    def test_broken_table_fails_preassociativity(self):
        broken = Algebra.from_products(2, 2, {(0, 0): [0, 1], (0, 1): [1, 0]}, validate=False)
        report = verify_facts(broken)
        assert report.entry('commutes').passed
        assert report.entry('distributes').passed
        assert not report.entry('preassociative').passed
        assert report.entry('preassociative').counterexample is not None

    def test_sampled_facts_for_large_algebra(self):
        report = verify_facts(dim_p_ring(5), seed=7)
        assert not report.exhaustive
        assert report.passed

    def test_group_facts(self, small_gallery):
        for name, A in small_gallery.items():
            report = verify_group_facts(A)
            assert [e.name for e in report.entries] == [
                'circle_isomorphism', 'tau_action', 'commutator_product', 'translation_meet']
            assert report.passed, name

    def test_commutator_identity_elementwise(self, rings):
        A = rings[2]
        T = ring_to_subgroup(A)
        for x in all_vectors(2, 2):
            for y in all_vectors(2, 2):
                x_, y_ = RowVector(x, 2), RowVector(y, 2)
                assert commutator(translation(x_), T.tau(y_)) == translation(multiply(A, x_, y_))

    @pytest.mark.parametrize('p', [2, 3])
    @pytest.mark.parametrize('d', [2, 3, 4, 5, 6])
    def test_translations_in_poly_quotient(self, p, d):
        if p ** d > 2 ** 10:
            pytest.skip("too many elements for an explicit subgroup")
        for e in range(d - 1):
            A = poly_quotient(d, e, p)
            assert len(annihilator(A)) == e + 1
            meet = intersect_translations(ring_to_subgroup(A, verify=False).as_subgroup())
            assert meet.order == p ** (e + 1)

    def test_normalizer_criterion(self):
        for A in (truncated_exterior(3), exterior_3()):
            T = ring_to_subgroup(A, verify=False).as_subgroup()
            assert translations_normalize(T) == triple_products_vanish(A)


class TestConjugacy:
    def test_conjugate_by_identity(self, rings):
        T = ring_to_subgroup(rings[0])
        assert conjugate_subgroup(T, Matrix.identity(2, 2)) == T

    def test_conjugate_ring1_by_swap(self, rings):
        conjugated = conjugate_subgroup(ring_to_subgroup(rings[0]), SWAP)
        assert conjugated == ring_to_subgroup(rings[1])
        assert conjugated.as_subgroup() == ring_to_subgroup(rings[1]).as_subgroup()

    def test_translations_are_normal(self, zero22):
        N = ring_to_subgroup(zero22)
        assert conjugate_subgroup(N, Matrix([[1, 1], [0, 1]], 2)) == N

    def test_singular_phi(self, rings):
        with pytest.raises(Singular):
            conjugate_subgroup(ring_to_subgroup(rings[0]), Matrix([[1, 1], [1, 1]], 2))

    def test_iso_to_conjugacy(self, rings, zero22):
        assert iso_to_conjugacy(rings[0], rings[1], SWAP)
        assert iso_to_conjugacy(rings[0], rings[0], Matrix.identity(2, 2))
        assert not iso_to_conjugacy(rings[0], zero22, Matrix.identity(2, 2))

    def test_conjugacy_to_iso(self, rings):
        T1, T2 = ring_to_subgroup(rings[0]), ring_to_subgroup(rings[1])
        assert conjugacy_to_iso(T1, T2, SWAP)
        assert not conjugacy_to_iso(T1, T2, Matrix.identity(2, 2))


class TestFindIsomorphism:
    def test_identity_found_first(self, rings):
        for A in rings:
            assert find_isomorphism(A, A) == Matrix.identity(2, 2)

    def test_sym4_rings_are_isomorphic(self, rings):
        for A1 in rings:
            for A2 in rings:
                phi = find_isomorphism(A1, A2)
                assert phi is not None
                assert is_isomorphism(A1, A2, phi)
                T1, T2 = ring_to_subgroup(A1), ring_to_subgroup(A2)
                conjugated = conjugate_subgroup(T1, phi)
                assert conjugated.as_subgroup() == T2.as_subgroup()

    def test_no_isomorphism_to_zero(self, rings, zero22):
        assert find_isomorphism(rings[0], zero22) is None
        assert find_isomorphism(zero22, rings[0]) is None

    def test_dim_p_ring_at_two_is_ring1(self, rings):
        phi = find_isomorphism(dim_p_ring(2), rings[0])
        assert phi is not None

    def test_gl_bound(self, rings):
        with pytest.raises(BoundExceeded):
            find_isomorphism(rings[0], rings[1], max_gl=5)

    def test_exhaustive_conjugacy_agrees(self, rings, zero22):
        assert are_conjugate_by_exhaustion(ring_to_subgroup(rings[0]), ring_to_subgroup(rings[2])) is not None
        assert are_conjugate_by_exhaustion(ring_to_subgroup(rings[0]), ring_to_subgroup(zero22)) is None
