"""The affine group Aff(V) = GL(V)N acting on the right of V = GF(p)^d.

An element is a pair (A, b) acting as ``z -> z A + b``; products are read
left to right, so ``compose(g, h)`` first applies g, then h.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from .errors import Incompatible, NotASubgroup, SizeBoundExceeded, Singular, VerificationFailed
from .ff_linalg import Matrix, RowVector, all_vectors, gl_order, mat_inverse, rank
from .utils.search_config import SearchConfig

logger = logging.getLogger(__name__)


class AffineElement:
    """An invertible affine map ``z -> z @ linear + shift``."""

    __slots__ = ('linear', 'shift', '_hash')

    def __init__(self, linear: Matrix, shift: RowVector, check: bool = True):
        if linear.p != shift.p or linear.d != shift.d:
            raise Incompatible("linear part and shift do not match")
        if check and rank(linear) != linear.d:
            raise Singular("linear part of an affine element must be invertible")
        self.linear = linear
        self.shift = shift
        self._hash = None

    @property
    def p(self) -> int:
        return self.linear.p

    @property
    def d(self) -> int:
        return self.linear.d

    def __call__(self, z: RowVector) -> RowVector:
        """Image of z."""
        return z @ self.linear + self.shift

    def zero_image(self) -> RowVector:
        return self.shift

    def is_translation(self) -> bool:
        return self.linear.is_identity()

    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Sort key: zero image first, then the linear part row by row."""
        return self.shift.as_tuple(), tuple(int(v) for v in self.linear.rows.reshape(-1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineElement):
            return NotImplemented
        return self.shift == other.shift and self.linear == other.linear

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.linear, self.shift))
        return self._hash

    def __repr__(self) -> str:
        return f"AffineElement(linear={self.linear.tolist()}, shift={list(self.shift.as_tuple())}, p={self.p})"


def _check_compatible(g: AffineElement, h: AffineElement) -> None:
    if g.p != h.p or g.d != h.d:
        raise Incompatible(f"elements over (p={g.p}, d={g.d}) and (p={h.p}, d={h.d})")


def identity(p: int, d: int) -> AffineElement:
    return AffineElement(Matrix.identity(p, d), RowVector.zero(p, d), check=False)


def translation(x: RowVector) -> AffineElement:
    """The translation tau_x : z -> z + x."""
    return AffineElement(Matrix.identity(x.p, x.d), x, check=False)


def linear_map(A: Matrix) -> AffineElement:
    return AffineElement(A, RowVector.zero(A.p, A.d))


def compose(g: AffineElement, h: AffineElement) -> AffineElement:
    """The product gh acting as z -> (z g) h."""
    _check_compatible(g, h)
    return AffineElement(g.linear @ h.linear, g.shift @ h.linear + h.shift, check=False)


def inverse(g: AffineElement) -> AffineElement:
    linear_inv = mat_inverse(g.linear)
    return AffineElement(linear_inv, -(g.shift @ linear_inv), check=False)


def decompose(g: AffineElement) -> Tuple[Matrix, RowVector]:
    """Split g uniquely as its GL(V) part followed by the translation by 0 g."""
    return g.linear, g(RowVector.zero(g.p, g.d))


def conjugate(g: AffineElement, h: AffineElement) -> AffineElement:
    """g^h = h^-1 g h."""
    return compose(compose(inverse(h), g), h)


def commutator(g: AffineElement, h: AffineElement) -> AffineElement:
    """[g, h] = g^-1 g^h."""
    return compose(inverse(g), conjugate(g, h))


def element_order(g: AffineElement, bound: Optional[int] = None) -> int:
    bound = bound or SearchConfig.closure_bound()
    power = g
    for n in range(1, bound + 1):
        if power.is_translation() and power.shift.is_zero():
            return n
        power = compose(power, g)
    raise SizeBoundExceeded(f"order of {g!r} exceeds {bound}")


class SubgroupElements:
    """A finite subgroup of Aff(V) stored as an explicit element set."""

    __slots__ = ('p', 'd', 'elements', '_by_image')

    def __init__(self, elements: Iterable[AffineElement], p: Optional[int] = None,
                 d: Optional[int] = None, validate: bool = True):
        elements = frozenset(elements)
        if not elements and (p is None or d is None):
            raise NotASubgroup("an empty element set is not a subgroup")
        sample = next(iter(elements), None)
        self.p = sample.p if sample is not None else p
        self.d = sample.d if sample is not None else d
        for g in elements:
            if g.p != self.p or g.d != self.d:
                raise Incompatible("subgroup elements over different spaces")
        self.elements: FrozenSet[AffineElement] = elements
        self._by_image: Optional[Dict[RowVector, List[AffineElement]]] = None
        if validate:
            self.validate()

    def validate(self) -> None:
        """Check identity, closure under composition and under inverses."""
        if identity(self.p, self.d) not in self.elements:
            raise NotASubgroup("element set does not contain the identity")
        for g in self.elements:
            if inverse(g) not in self.elements:
                raise NotASubgroup(f"inverse of {g!r} missing")
            for h in self.elements:
                if compose(g, h) not in self.elements:
                    raise NotASubgroup(f"product of {g!r} and {h!r} missing")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[AffineElement]:
        return iter(sorted(self.elements, key=AffineElement.key))

    def __contains__(self, g: AffineElement) -> bool:
        return g in self.elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupElements):
            return NotImplemented
        return self.p == other.p and self.d == other.d and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def by_zero_image(self) -> Dict[RowVector, List[AffineElement]]:
        if self._by_image is None:
            index: Dict[RowVector, List[AffineElement]] = {}
            for g in self.elements:
                index.setdefault(g.zero_image(), []).append(g)
            self._by_image = index
        return self._by_image

    def __repr__(self) -> str:
        return f"SubgroupElements(p={self.p}, d={self.d}, order={self.order})"


def translation_group(p: int, d: int) -> SubgroupElements:
    """The group N of all translations."""
    return SubgroupElements((translation(RowVector(x, p)) for x in all_vectors(p, d)), validate=False)


def is_regular(T: SubgroupElements) -> bool:
    """True iff g -> 0 g is a bijection T -> V."""
    if T.order != T.p ** T.d:
        return False
    return len(T.by_zero_image()) == T.order


def is_abelian(T: SubgroupElements) -> bool:
    """Whether T is abelian, by checking that a generating set commutes.

    Generators are picked greedily: any element outside the closure of the
    ones chosen so far is added, so at most log_p |T| are needed for a p-group.
    """
    gens: List[AffineElement] = []
    closure = {identity(T.p, T.d)}
    for g in T:
        if g in closure:
            continue
        if any(compose(g, h) != compose(h, g) for h in gens):
            return False
        gens.append(g)
        try:
            closure = generate(gens, max_size=T.order).elements
        except SizeBoundExceeded:
            raise NotASubgroup("generators close to more elements than the set holds") from None
    return True


def translation_centralizer(T: SubgroupElements) -> SubgroupElements:
    """C_N(T): translations commuting with every element of T.

    tau_x commutes with (A, b) exactly when x A = x.
    """
    eye = np.eye(T.d, dtype=np.int64)
    linear_parts = {g.linear for g in T.elements}
    stacked = np.concatenate([(M.rows - eye) % T.p for M in linear_parts], axis=1)
    vectors = all_vectors(T.p, T.d)
    fixed = ~((vectors @ stacked) % T.p).any(axis=1)
    return SubgroupElements((translation(RowVector(x, T.p)) for x in vectors[fixed]), T.p, T.d,
                            validate=False)


def centralizer_of_translations(T: SubgroupElements) -> SubgroupElements:
    """C_T(N): elements of T commuting with the basis translations (hence with N)."""
    basis = [translation(RowVector.basis(T.p, T.d, i)) for i in range(T.d)]
    central = [g for g in T.elements if all(compose(t, g) == compose(g, t) for t in basis)]
    return SubgroupElements(central, T.p, T.d, validate=False)


def intersect_translations(T: SubgroupElements) -> SubgroupElements:
    """N intersect T, cross-checked against C_N(T) and C_T(N)."""
    meet = SubgroupElements((g for g in T.elements if g.is_translation()), T.p, T.d, validate=False)
    if meet != translation_centralizer(T) or meet != centralizer_of_translations(T):
        raise VerificationFailed("N meet T differs from the centralizers C_N(T), C_T(N)")
    logger.debug(f"N meet T has order {meet.order} in a subgroup of order {T.order}")
    return meet


def translations_normalize(T: SubgroupElements) -> bool:
    """Whether N normalizes T, by conjugating T with the basis translations."""
    for i in range(T.d):
        t = translation(RowVector.basis(T.p, T.d, i))
        for g in T.elements:
            if conjugate(g, t) not in T.elements:
                return False
    return True


def generate(gens: Iterable[AffineElement], p: Optional[int] = None, d: Optional[int] = None,
             max_size: Optional[int] = None) -> SubgroupElements:
    """Closure of ``gens`` under composition (finite, so inverses come free)."""
    gens = list(gens)
    if gens:
        p, d = gens[0].p, gens[0].d
        for g in gens:
            _check_compatible(gens[0], g)
    elif p is None or d is None:
        raise Incompatible("generate() needs p and d when no generators are given")
    max_size = max_size or SearchConfig.closure_bound()

    one = identity(p, d)
    elements = {one}
    queue = deque([one])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(g, s)
            if h not in elements:
                elements.add(h)
                if len(elements) > max_size:
                    raise SizeBoundExceeded(f"closure exceeds {max_size} elements")
                queue.append(h)
    logger.debug(f"generated a subgroup of order {len(elements)} from {len(gens)} generators")
    return SubgroupElements(elements, p, d, validate=False)


def affine_group_order(p: int, d: int) -> int:
    return p ** d * gl_order(p, d)
