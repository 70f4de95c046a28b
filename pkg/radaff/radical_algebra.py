"""Commutative associative GF(p)-algebras given by structure constants.

An algebra on V = GF(p)^d is stored as a symmetric array ``sc`` of shape
(d, d, d) with ``e_i e_j = sum_k sc[i, j, k] e_k``. Right multiplication by
y is the matrix ``delta(y)`` so that ``x y = x delta(y)``, and the circle
operation ``x o y = x + y + x y`` turns V into the group (V, o).
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (BoundExceeded, Incompatible, InvalidParameters, NotAssociative,
                     NotNilpotent, VerificationFailed)
from .ff_linalg import (Matrix, RowVector, all_vectors, check_prime, left_kernel_array,
                        mat_inverse, span_basis)
from .utils.search_config import SearchConfig

logger = logging.getLogger(__name__)

VectorLike = Union[RowVector, Sequence[int], np.ndarray]


class Algebra:
    """A commutative GF(p)-algebra on GF(p)^d.

    Commutativity is structural (``sc`` must be symmetric in its first two
    indices); associativity is checked unless ``validate=False``, which is
    only meant for diagnosing broken tables.
    """

    __slots__ = ('p', 'd', 'sc', '_key', '_deltas')

    def __init__(self, p: int, d: int, sc: np.ndarray, validate: bool = True):
        self.p = check_prime(p)
        if not isinstance(d, (int, np.integer)) or d < 1:
            raise InvalidParameters(f"dimension must be a positive integer, got {d!r}")
        self.d = int(d)
        array = np.array(sc, dtype=np.int64) % self.p
        if array.shape != (self.d, self.d, self.d):
            raise InvalidParameters(f"structure constants must have shape {(self.d,) * 3}, got {array.shape}")
        if not np.array_equal(array, array.transpose(1, 0, 2)):
            raise InvalidParameters("structure constants are not symmetric: algebra not commutative")
        array.setflags(write=False)
        self.sc = array
        self._key: Optional[Tuple[int, ...]] = None
        self._deltas: Optional[np.ndarray] = None
        if validate:
            defect = self.associativity_defect()
            if defect is not None:
                i, j, k = defect
                raise NotAssociative(f"(e{i + 1} e{j + 1}) e{k + 1} != e{i + 1} (e{j + 1} e{k + 1})")

    @classmethod
    def from_products(cls, p: int, d: int, products: Mapping[Tuple[int, int], Sequence[int]],
                      validate: bool = True) -> 'Algebra':
        """Build from basis products ``{(i, j): e_i e_j}`` with 0-based i <= j."""
        sc = np.zeros((d, d, d), dtype=np.int64)
        for (i, j), value in products.items():
            if not 0 <= i <= j < d:
                raise InvalidParameters(f"product index ({i}, {j}) must satisfy 0 <= i <= j < {d}")
            sc[i, j] = value
            sc[j, i] = value
        return cls(p, d, sc, validate=validate)

    @classmethod
    def from_params(cls, p: int, d: int, params: Sequence[int], validate: bool = True) -> 'Algebra':
        """Inverse of :meth:`params`."""
        params = np.asarray(params, dtype=np.int64).reshape(-1, d)
        pairs = upper_pairs(d)
        if params.shape[0] != len(pairs):
            raise InvalidParameters(f"expected {len(pairs) * d} parameters for d={d}")
        return cls.from_products(p, d, dict(zip(pairs, params)), validate=validate)

    @classmethod
    def zero(cls, p: int, d: int) -> 'Algebra':
        return cls(p, d, np.zeros((d, d, d), dtype=np.int64))

    def params(self) -> Tuple[int, ...]:
        """Free parameters: the products e_i e_j for i <= j, flattened."""
        if self._key is None:
            self._key = tuple(int(v) for i, j in upper_pairs(self.d) for v in self.sc[i, j])
        return self._key

    def basis(self, i: int) -> RowVector:
        return RowVector.basis(self.p, self.d, i)

    def deltas(self) -> np.ndarray:
        """Stack of delta(e_j), shape (d, d, d) indexed [j, i, k]."""
        if self._deltas is None:
            deltas = self.sc.transpose(1, 0, 2).copy()
            deltas.setflags(write=False)
            self._deltas = deltas
        return self._deltas

    def is_zero(self) -> bool:
        return not self.sc.any()

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.sc, self.sc.transpose(1, 0, 2)))

    def associativity_defect(self) -> Optional[Tuple[int, int, int]]:
        """First basis triple (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k), if any."""
        left = np.einsum('ijm,mkl->ijkl', self.sc, self.sc) % self.p
        right = np.einsum('jkm,iml->ijkl', self.sc, self.sc) % self.p
        bad = np.argwhere((left != right).any(axis=3))
        if bad.size == 0:
            return None
        return tuple(int(v) for v in bad[0])

    def is_associative(self) -> bool:
        return self.associativity_defect() is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.p == other.p and self.d == other.d and np.array_equal(self.sc, other.sc)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.params()))

    def __repr__(self) -> str:
        nonzero = {(i + 1, j + 1): tuple(int(v) for v in self.sc[i, j])
                   for i, j in upper_pairs(self.d) if self.sc[i, j].any()}
        return f"Algebra(p={self.p}, d={self.d}, products={nonzero})"


def upper_pairs(d: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i, d)]


class Nilpotency(NamedTuple):
    nilpotent: bool
    nil_class: Optional[int]


@dataclass(frozen=True)
class AbelianType:
    """Cyclic orders of a finite abelian p-group, sorted descending."""

    orders: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'orders', tuple(sorted((int(o) for o in self.orders), reverse=True)))

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return self.orders[0] if self.orders else 1

    def __str__(self) -> str:
        return ','.join(str(o) for o in self.orders)


def _vec(A: Algebra, x: VectorLike) -> np.ndarray:
    if isinstance(x, RowVector):
        if x.p != A.p or x.d != A.d:
            raise Incompatible(f"vector over (p={x.p}, d={x.d}) used with algebra over (p={A.p}, d={A.d})")
        return x.entries
    entries = np.asarray(x, dtype=np.int64) % A.p
    if entries.shape != (A.d,):
        raise Incompatible(f"expected a vector of length {A.d}")
    return entries


# Batched kernels: rows of X, Y are elements of V.

def batch_delta(A: Algebra, Y: np.ndarray) -> np.ndarray:
    """delta(y) for each row y of Y, shape (n, d, d)."""
    return np.einsum('nj,ijk->nik', Y, A.sc) % A.p


def batch_multiply(A: Algebra, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise products x y."""
    return np.einsum('ni,nik->nk', X, batch_delta(A, Y)) % A.p


def batch_circle(A: Algebra, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return (X + Y + batch_multiply(A, X, Y)) % A.p


def multiply(A: Algebra, x: VectorLike, y: VectorLike) -> RowVector:
    """x y = x delta(y)."""
    return RowVector(_vec(A, x) @ delta_matrix(A, y).rows, A.p)


def delta_matrix(A: Algebra, y: VectorLike) -> Matrix:
    """Matrix of right multiplication by y; row i is e_i y."""
    return Matrix(np.einsum('j,ijk->ik', _vec(A, y), A.sc), A.p)


def circle(A: Algebra, x: VectorLike, y: VectorLike) -> RowVector:
    """x o y = x + y + x y."""
    xv, yv = _vec(A, x), _vec(A, y)
    return RowVector(xv + yv + multiply(A, xv, yv).entries, A.p)


def element_power(A: Algebra, x: VectorLike, n: int) -> RowVector:
    """The ordinary power x^n for n >= 1."""
    if n < 1:
        raise InvalidParameters("element_power needs n >= 1; the algebra has no unit")
    xv = _vec(A, x)
    right = delta_matrix(A, xv).rows
    power = xv
    for _ in range(n - 1):
        if not power.any():
            break
        power = (power @ right) % A.p
    return RowVector(power, A.p)


def circle_inverse(A: Algebra, x: VectorLike) -> RowVector:
    """The y with x o y = 0, as the terminating series -x + x^2 - x^3 + ...

    Raises:
        NotNilpotent: A is not nilpotent, even when x itself is.
    """
    if not is_nilpotent(A).nilpotent:
        raise NotNilpotent(f"{A!r} is not nilpotent, so (V, o) is not a group")
    return _series_inverse(A, x)


def _series_inverse(A: Algebra, x: VectorLike) -> RowVector:
    xv = _vec(A, x)
    right = delta_matrix(A, xv).rows
    total = np.zeros(A.d, dtype=np.int64)
    power = xv
    sign = -1
    for _ in range(A.d + 1):
        if not power.any():
            return RowVector(total, A.p)
        total = (total + sign * power) % A.p
        power = (power @ right) % A.p
        sign = -sign
    if power.any():
        raise NotNilpotent(f"powers of {list(map(int, xv))} do not vanish within {A.d + 1} steps")
    return RowVector(total, A.p)


def repeated_circle_power(A: Algebra, a: int, x: VectorLike) -> RowVector:
    xv = _vec(A, x)
    result = np.zeros(A.d, dtype=np.int64)
    for _ in range(a):
        result = circle(A, result, xv).entries
    return RowVector(result, A.p)


def binomial_circle_power(A: Algebra, a: int, x: VectorLike) -> RowVector:
    """sum_{i=1}^{a} C(a, i) x^i, stopping once the powers vanish."""
    xv = _vec(A, x)
    right = delta_matrix(A, xv).rows
    total = np.zeros(A.d, dtype=np.int64)
    power = xv
    for i in range(1, a + 1):
        if not power.any():
            break
        total = (total + (math.comb(a, i) % A.p) * power) % A.p
        power = (power @ right) % A.p
    return RowVector(total, A.p)


def circle_power(A: Algebra, a: int, x: VectorLike) -> RowVector:
    """x circled with itself a times, computed two ways that must agree."""
    if a < 0:
        raise InvalidParameters("circle_power takes a nonnegative multiplier")
    repeated = repeated_circle_power(A, a, x)
    binomial = binomial_circle_power(A, a, x)
    if repeated != binomial:
        raise VerificationFailed(f"{a} o x: repeated circle {repeated} != binomial sum {binomial}")
    return repeated


def power_chain(A: Algebra) -> List[int]:
    """Dimensions of V, V^2, V^3, ... down to 0 or to the point it stabilizes."""
    current = np.eye(A.d, dtype=np.int64)
    dims = [A.d]
    deltas = A.deltas()
    while current.shape[0] > 0:
        products = np.concatenate([(current @ deltas[j]) % A.p for j in range(A.d)])
        following = span_basis(products, A.p, A.d)
        dims.append(int(following.shape[0]))
        if following.shape[0] == current.shape[0]:
            break
        current = following
    return dims


def is_nilpotent(A: Algebra) -> Nilpotency:
    """Whether V^n = 0 for some n, with the least such n."""
    dims = power_chain(A)
    if dims[-1] != 0:
        return Nilpotency(False, None)
    return Nilpotency(True, len(dims))


def _inverse_exists_everywhere(A: Algebra) -> bool:
    elements = all_vectors(A.p, A.d)
    n = elements.shape[0]
    for x in elements:
        results = batch_circle(A, np.broadcast_to(x, (n, A.d)), elements)
        if not (~results.any(axis=1)).any():
            return False
    return True


def is_radical(A: Algebra) -> bool:
    """Every element has a circle inverse.

    For finite dimension this is nilpotency; small instances are also
    checked element by element.
    """
    nilpotent = is_nilpotent(A).nilpotent
    if A.p ** A.d > 2 ** 10:
        return nilpotent
    if nilpotent:
        for x in all_vectors(A.p, A.d):
            if not circle(A, x, _series_inverse(A, x)).is_zero():
                raise VerificationFailed(f"circle inverse of {list(map(int, x))} is wrong")
        return True
    return _inverse_exists_everywhere(A)


def annihilator(A: Algebra) -> List[RowVector]:
    """Basis of U = {x : x y = 0 for all y}, in reduced row-echelon form."""
    stacked = A.sc.reshape(A.d, A.d * A.d)
    return [RowVector(row, A.p) for row in left_kernel_array(stacked, A.p)]


def _require_small(A: Algebra, bound: Optional[int]) -> None:
    bound = SearchConfig.resolve('RADAFF_MAX_ELEMENTS', bound)
    if A.p ** A.d > bound:
        raise BoundExceeded(f"p^d = {A.p ** A.d} exceeds the element bound {bound}")


def _p_multiple(A: Algebra, X: np.ndarray) -> np.ndarray:
    """p o x for every row x."""
    result = X.copy()
    for _ in range(A.p - 1):
        result = batch_circle(A, result, X)
    return result


def order_exponents(A: Algebra, max_elements: Optional[int] = None) -> np.ndarray:
    """k with circle order p^k, for every element in lexicographic order."""
    if not is_nilpotent(A).nilpotent:
        raise NotNilpotent("(V, o) is only a group for nilpotent algebras here")
    _require_small(A, max_elements)
    current = all_vectors(A.p, A.d)
    exponents = np.zeros(current.shape[0], dtype=np.int64)
    alive = current.any(axis=1)
    while alive.any():
        exponents += alive
        current = _p_multiple(A, current)
        alive = current.any(axis=1)
    return exponents


def circle_order(A: Algebra, x: VectorLike) -> int:
    xv = _vec(A, x)
    order = 1
    current = xv[np.newaxis, :]
    while current.any():
        current = _p_multiple(A, current)
        order *= A.p
    return order


def abelian_type(A: Algebra, max_elements: Optional[int] = None) -> AbelianType:
    """Isomorphism type of (V, o) from the counts of elements killed by p^k."""
    exponents = order_exponents(A, max_elements)
    top = int(exponents.max())
    # s[k] = log_p #{x : p^k o x = 0} = sum_i min(lambda_i, k)
    s = []
    for k in range(top + 2):
        count = int((exponents <= k).sum())
        log = round(math.log(count, A.p))
        if A.p ** log != count:
            raise VerificationFailed(f"{count} elements of order dividing p^{k} is not a power of {A.p}")
        s.append(log)
    at_least = [s[k] - s[k - 1] for k in range(1, top + 2)]
    orders: List[int] = []
    for k in range(1, top + 1):
        orders.extend([A.p ** k] * (at_least[k - 1] - at_least[k]))
    result = AbelianType(tuple(orders))
    if result.size != A.p ** A.d:
        raise VerificationFailed(f"type {result} does not have order {A.p ** A.d}")
    return result


def exponent(A: Algebra, max_elements: Optional[int] = None) -> int:
    """Exponent of (V, o); always a power of p."""
    return A.p ** int(order_exponents(A, max_elements).max())


def exponent_bound(A: Algebra) -> int:
    """Least p^j with p^j >= nilpotency class; the exponent divides it."""
    nil = is_nilpotent(A)
    if not nil.nilpotent:
        raise NotNilpotent("exponent bound needs a nilpotent algebra")
    bound = 1
    while bound < nil.nil_class:
        bound *= A.p
    return bound


def triple_products_vanish(A: Algebra) -> bool:
    """x y z = 0 for all x, y, z; equivalently N normalizes the matching T."""
    triple = np.einsum('ijm,mkl->ijkl', A.sc, A.sc) % A.p
    return not triple.any()


def push_forward(A: Algebra, phi: Matrix) -> Algebra:
    """The algebra on V making phi an isomorphism from A.

    Its product is u * v = ((u phi^-1)(v phi^-1)) phi.
    """
    if phi.p != A.p or phi.d != A.d:
        raise Incompatible("phi does not act on the algebra's space")
    phi_inv = mat_inverse(phi).rows
    sc = np.einsum('ai,ijk->ajk', phi_inv, A.sc) % A.p
    sc = np.einsum('bj,ajk->abk', phi_inv, sc) % A.p
    sc = np.einsum('abk,kl->abl', sc, phi.rows) % A.p
    return Algebra(A.p, A.d, sc)
