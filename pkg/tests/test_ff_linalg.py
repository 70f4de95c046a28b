import numpy as np
import pytest

from radaff.errors import Incompatible, InvalidParameters, NotInvertible, Singular
from radaff.ff_linalg import (Matrix, RowVector, Scalar, all_vectors, check_prime, field_inverse,
                              general_linear, gl_order, inv_mod, left_kernel, mat_inverse, rank,
                              row_reduce, span_basis)

PRIMES = [2, 3, 5, 7]


def random_matrix(rng, p, d):
    """A random d x d product of d x r and r x d factors, so its rank is at most r."""
    r = int(rng.integers(0, d + 1))
    left = rng.integers(0, p, size=(d, r))
    right = rng.integers(0, p, size=(r, d))
    return Matrix((left @ right) % p, p)


def image_size(M):
    """Number of distinct x M over all x in V, counted by brute force."""
    images = (all_vectors(M.p, M.d) @ M.rows) % M.p
    return len({tuple(row) for row in images.tolist()})


class TestScalars:
    def test_check_prime_accepts_primes(self):
        assert check_prime(2) == 2
        assert check_prime(97) == 97

    @pytest.mark.parametrize('bad', [0, 1, 4, 9, -3, True, 2.0])
    def test_check_prime_rejects(self, bad):
        with pytest.raises(InvalidParameters):
            check_prime(bad)

    def test_inverse_mod(self):
        assert inv_mod(3, 7) == 5
        assert field_inverse(Scalar(2, 5)) == Scalar(3, 5)
        with pytest.raises(NotInvertible):
            inv_mod(0, 7)

    def test_scalar_arithmetic(self):
        a = Scalar(4, 5)
        assert a + 3 == Scalar(2, 5)
        assert a * a == Scalar(1, 5)
        assert -a == Scalar(1, 5)
        assert a / Scalar(2, 5) == Scalar(2, 5)
        with pytest.raises(Incompatible):
            a + Scalar(1, 3)


class TestVectorsAndMatrices:
    def test_vector_arithmetic_reduces(self):
        x = RowVector([1, 2], 3)
        y = RowVector([2, 2], 3)
        assert x + y == RowVector([0, 1], 3)
        assert x - y == RowVector([2, 0], 3)
        assert x.scale(2) == RowVector([2, 1], 3)
        assert x[1] == Scalar(2, 3)

    def test_vectors_are_immutable_and_hashable(self):
        x = RowVector([1, 0, 1], 2)
        with pytest.raises(ValueError):
            x.entries[0] = 0
        assert len({x, RowVector([1, 0, 1], 2), RowVector([1, 0, 1], 3)}) == 2

    def test_row_vector_acts_on_the_right(self):
        M = Matrix([[0, 1], [1, 1]], 2)
        assert RowVector([1, 0], 2) @ M == RowVector([0, 1], 2)
        assert RowVector([1, 1], 2) @ M == RowVector([1, 0], 2)

    def test_mismatched_operands(self):
        with pytest.raises(Incompatible):
            RowVector([1, 0], 2) + RowVector([1, 0, 0], 2)
        with pytest.raises(Incompatible):
            Matrix.identity(2, 2) @ Matrix.identity(3, 2)

    def test_inverse(self):
        M = Matrix([[2, 1], [1, 1]], 5)
        assert M @ mat_inverse(M) == Matrix.identity(5, 2)
        assert mat_inverse(Matrix([[1, 1], [0, 1]], 2)) == Matrix([[1, 1], [0, 1]], 2)

    def test_singular_inverse(self):
        with pytest.raises(Singular):
            mat_inverse(Matrix([[1, 1], [1, 1]], 2))

    def test_non_square_matrix(self):
        with pytest.raises(InvalidParameters):
            Matrix([[1, 0, 0]], 2)


class TestEchelon:
    def test_row_reduce(self):
        reduced, pivots = row_reduce(np.array([[2, 4, 1], [1, 2, 0]]), 5)
        assert pivots == [0, 2]
        assert reduced.tolist() == [[1, 2, 0], [0, 0, 1]]

    def test_rank(self):
        assert rank(Matrix([[1, 1], [1, 1]], 2)) == 1
        assert rank(Matrix.identity(3, 4)) == 4
        assert rank(Matrix.zero(3, 2)) == 0

    def test_span_basis(self):
        basis = span_basis(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]), 2, 3)
        assert basis.tolist() == [[1, 0, 1], [0, 1, 1]]
        assert span_basis(np.zeros((0, 3)), 2, 3).shape == (0, 3)

    def test_left_kernel(self):
        assert left_kernel(Matrix([[1, 1], [1, 1]], 2)) == [RowVector([1, 1], 2)]
        assert left_kernel(Matrix.identity(3, 2)) == []
        kernel = left_kernel(Matrix.zero(3, 2))
        assert kernel == [RowVector([1, 0], 3), RowVector([0, 1], 3)]


class TestEnumeration:
    def test_all_vectors_is_lexicographic(self):
        vectors = all_vectors(3, 2)
        assert vectors.shape == (9, 2)
        assert vectors[:4].tolist() == [[0, 0], [0, 1], [0, 2], [1, 0]]
        assert vectors[-1].tolist() == [2, 2]

    @pytest.mark.parametrize('p, d, order', [(2, 1, 1), (2, 2, 6), (2, 3, 168), (3, 2, 48), (5, 2, 480)])
    def test_gl_order(self, p, d, order):
        assert gl_order(p, d) == order

    def test_general_linear_identity_first(self):
        group = list(general_linear(2, 2))
        assert group[0] == Matrix.identity(2, 2)
        assert len(group) == 6
        assert len(set(group)) == 6
        assert all(rank(M) == 2 for M in group)

    def test_general_linear_matches_order(self):
        assert sum(1 for _ in general_linear(3, 2)) == gl_order(3, 2)


class TestFieldProperties:
    @pytest.mark.parametrize('p', PRIMES)
    def test_field_inverse_is_an_involution(self, p):
        for value in range(1, p):
            a = Scalar(value, p)
            assert field_inverse(field_inverse(a)) == a
            assert a * field_inverse(a) == Scalar(1, p)

    @pytest.mark.parametrize('p', PRIMES)
    def test_zero_has_no_inverse(self, p):
        with pytest.raises(NotInvertible):
            field_inverse(Scalar(0, p))

    @pytest.mark.parametrize('p', PRIMES)
    @pytest.mark.parametrize('d', [1, 2, 3, 4, 5])
    def test_rank_nullity(self, p, d):
        rng = np.random.default_rng(1000 * p + d)
        for _ in range(10):
            M = random_matrix(rng, p, d)
            r = rank(M)
            kernel = left_kernel(M)
            assert r + len(kernel) == d
            assert image_size(M) == p ** r
            for x in kernel:
                assert (x @ M).is_zero()
            if kernel:
                assert rank(np.stack([x.entries for x in kernel]), p) == len(kernel)

    @pytest.mark.parametrize('p', PRIMES)
    @pytest.mark.parametrize('d', [1, 2, 3, 4, 5])
    def test_double_inverse(self, p, d):
        rng = np.random.default_rng(2000 * p + d)
        for _ in range(10):
            M = random_matrix(rng, p, d)
            if image_size(M) < p ** d:
                with pytest.raises(Singular):
                    mat_inverse(M)
                continue
            inverse = mat_inverse(M)
            assert M @ inverse == Matrix.identity(p, d)
            assert mat_inverse(inverse) == M
