"""Exact linear algebra over the prime field GF(p).

Vectors are rows and maps act on the right: the image of ``x`` under ``M``
is ``x @ M``. Entries are stored as reduced ``int64`` residues in read-only
NumPy arrays, so every value object here is immutable and hashable.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime

from .errors import Incompatible, InvalidParameters, NotInvertible, Singular

logger = logging.getLogger(__name__)

# Products of d pairs of residues must fit in int64.
MAX_MODULUS = 1 << 26


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Return ``p`` as an int if it is a word-sized prime, else raise."""
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise InvalidParameters(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if p >= MAX_MODULUS or not isprime(p):
        raise InvalidParameters(f"modulus {p} is not a prime below {MAX_MODULUS}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise NotInvertible(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Scalar:
    """An element of GF(p); ``value`` is always reduced."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, 'p', check_prime(self.p))
        object.__setattr__(self, 'value', int(self.value) % self.p)

    def _coerce(self, other: Union['Scalar', int]) -> int:
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise Incompatible(f"moduli {self.p} and {other.p} differ")
            return other.value
        return int(other)

    def __add__(self, other):
        return Scalar(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.value - self._coerce(other), self.p)

    def __mul__(self, other):
        return Scalar(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value, self.p)

    def __truediv__(self, other):
        return self * field_inverse(Scalar(self._coerce(other), self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Scalar({self.value} mod {self.p})"


def field_inverse(a: Scalar) -> Scalar:
    """Multiplicative inverse in GF(p); raises NotInvertible for zero."""
    return Scalar(inv_mod(a.value, a.p), a.p)


class RowVector:
    """A row vector of length d over GF(p)."""

    __slots__ = ('p', 'entries', '_hash')

    def __init__(self, entries: Union[Sequence[int], np.ndarray], p: int):
        self.p = check_prime(p)
        array = np.array(entries, dtype=np.int64).reshape(-1) % self.p
        self.entries = _frozen(array)
        self._hash = None

    @classmethod
    def zero(cls, p: int, d: int) -> 'RowVector':
        return cls(np.zeros(d, dtype=np.int64), p)

    @classmethod
    def basis(cls, p: int, d: int, i: int) -> 'RowVector':
        """The i-th standard basis vector (0-based)."""
        entries = np.zeros(d, dtype=np.int64)
        entries[i] = 1
        return cls(entries, p)

    @property
    def d(self) -> int:
        return int(self.entries.shape[0])

    def _check(self, other: 'RowVector') -> None:
        if self.p != other.p or self.d != other.d:
            raise Incompatible(f"vectors over (p={self.p}, d={self.d}) and (p={other.p}, d={other.d})")

    def __add__(self, other: 'RowVector') -> 'RowVector':
        self._check(other)
        return RowVector(self.entries + other.entries, self.p)

    def __sub__(self, other: 'RowVector') -> 'RowVector':
        self._check(other)
        return RowVector(self.entries - other.entries, self.p)

    def __neg__(self) -> 'RowVector':
        return RowVector(-self.entries, self.p)

    def scale(self, c: Union[int, Scalar]) -> 'RowVector':
        return RowVector(self.entries * (int(c) % self.p), self.p)

    def __matmul__(self, other: 'Matrix') -> 'RowVector':
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.p != other.p or self.d != other.d:
            raise Incompatible("vector and matrix do not match")
        return RowVector(self.entries @ other.rows, self.p)

    def __getitem__(self, i: int) -> Scalar:
        return Scalar(int(self.entries[i]), self.p)

    def __iter__(self) -> Iterator[Scalar]:
        return (Scalar(int(v), self.p) for v in self.entries)

    def __len__(self) -> int:
        return self.d

    def is_zero(self) -> bool:
        return not self.entries.any()

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RowVector):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.entries.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"RowVector({list(self.as_tuple())}, p={self.p})"


class Matrix:
    """A square d x d matrix over GF(p)."""

    __slots__ = ('p', 'rows', '_hash')

    def __init__(self, rows: Union[Sequence[Sequence[int]], np.ndarray], p: int):
        self.p = check_prime(p)
        array = np.array(rows, dtype=np.int64) % self.p
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise InvalidParameters(f"matrix must be square, got shape {array.shape}")
        self.rows = _frozen(array)
        self._hash = None

    @classmethod
    def identity(cls, p: int, d: int) -> 'Matrix':
        return cls(np.eye(d, dtype=np.int64), p)

    @classmethod
    def zero(cls, p: int, d: int) -> 'Matrix':
        return cls(np.zeros((d, d), dtype=np.int64), p)

    @property
    def d(self) -> int:
        return int(self.rows.shape[0])

    def _check(self, other: 'Matrix') -> None:
        if self.p != other.p or self.d != other.d:
            raise Incompatible(f"matrices over (p={self.p}, d={self.d}) and (p={other.p}, d={other.d})")

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return Matrix(self.rows @ other.rows, self.p)

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        return Matrix(self.rows + other.rows, self.p)

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        return Matrix(self.rows - other.rows, self.p)

    def __neg__(self) -> 'Matrix':
        return Matrix(-self.rows, self.p)

    def row(self, i: int) -> RowVector:
        return RowVector(self.rows[i], self.p)

    def is_identity(self) -> bool:
        return np.array_equal(self.rows, np.eye(self.d, dtype=np.int64))

    def is_zero(self) -> bool:
        return not self.rows.any()

    def tolist(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.rows, other.rows)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.rows.shape, self.rows.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()}, p={self.p})"


def row_reduce(array: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row-echelon form of a (possibly rectangular) array mod p.

    Returns:
        The RREF array and the list of pivot columns.
    """
    a = np.array(array, dtype=np.int64) % p
    if a.ndim != 2:
        raise InvalidParameters("row_reduce expects a 2-d array")
    n_rows, n_cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv_mod(int(a[r, c]), p)) % p
        column = a[:, c].copy()
        column[r] = 0
        a = (a - np.outer(column, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M: Union[Matrix, np.ndarray], p: Optional[int] = None) -> int:
    if isinstance(M, Matrix):
        M, p = M.rows, M.p
    return len(row_reduce(M, p)[1])


def span_basis(array: np.ndarray, p: int, d: int) -> np.ndarray:
    """RREF basis (nonzero rows only) of the row span of ``array``."""
    array = np.asarray(array, dtype=np.int64).reshape(-1, d)
    if array.shape[0] == 0:
        return np.zeros((0, d), dtype=np.int64)
    reduced, pivots = row_reduce(array, p)
    return reduced[:len(pivots)]


def mat_inverse(M: Matrix) -> Matrix:
    """Inverse of M; raises Singular exactly when det M = 0."""
    d = M.d
    augmented = np.concatenate([M.rows, np.eye(d, dtype=np.int64)], axis=1)
    reduced, pivots = row_reduce(augmented, M.p)
    if pivots[:d] != list(range(d)):
        raise Singular(f"matrix is singular over GF({M.p})")
    return Matrix(reduced[:, d:], M.p)


def left_kernel_array(array: np.ndarray, p: int) -> np.ndarray:
    """Basis (RREF rows) of {x : x @ array = 0} for a rectangular array."""
    array = np.asarray(array, dtype=np.int64) % p
    m = array.shape[0]
    reduced, pivots = row_reduce(array.T, p)
    free = [c for c in range(m) if c not in pivots]
    if not free:
        return np.zeros((0, m), dtype=np.int64)
    kernel = np.zeros((len(free), m), dtype=np.int64)
    for n, f in enumerate(free):
        kernel[n, f] = 1
        for i, c in enumerate(pivots):
            kernel[n, c] = -reduced[i, f]
    return span_basis(kernel % p, p, m)


def left_kernel(M: Matrix) -> List[RowVector]:
    """Basis of {x : xM = 0} in reduced row-echelon form; empty if trivial."""
    return [RowVector(row, M.p) for row in left_kernel_array(M.rows, M.p)]


def all_vectors(p: int, d: int) -> np.ndarray:
    """Every vector of GF(p)^d as rows, in lexicographic order."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(p, dtype=np.int64)] * d), indexing='ij')
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def gl_order(p: int, d: int) -> int:
    order = 1
    for i in range(d):
        order *= p ** d - p ** i
    return order


def general_linear(p: int, d: int) -> Iterator[Matrix]:
    """Enumerate GL(d, p), identity first.

    Matrices are produced as ``1 + D`` with the displacement D running over
    all d x d arrays in row-major lexicographic order; singular ones are
    skipped.
    """
    p = check_prime(p)
    eye = np.eye(d, dtype=np.int64)
    for flat in itertools.product(range(p), repeat=d * d):
        candidate = (eye + np.array(flat, dtype=np.int64).reshape(d, d)) % p
        if len(row_reduce(candidate, p)[1]) == d:
            yield Matrix(candidate, p)
