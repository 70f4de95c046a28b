"""Named example algebras.

Basis orderings are fixed per constructor: powers ascend, and wedge basis
elements follow their generators in lexicographic order.
"""
import itertools
import logging
from typing import Dict, List, Tuple

from .errors import InvalidParameters
from .ff_linalg import check_prime
from .radical_algebra import Algebra

logger = logging.getLogger(__name__)


def _unit(d: int, k: int) -> List[int]:
    v = [0] * d
    v[k] = 1
    return v


def sym4_rings() -> List[Algebra]:
    """The three nonzero algebra structures on GF(2)^2, with a = e1 and b = e2.

    1. a^2 = b, b^2 = ab = 0
    2. b^2 = a, a^2 = ab = 0
    3. a^2 = b^2 = ab = a + b
    """
    return [
        Algebra.from_products(2, 2, {(0, 0): [0, 1]}),
        Algebra.from_products(2, 2, {(1, 1): [1, 0]}),
        Algebra.from_products(2, 2, {(0, 0): [1, 1], (0, 1): [1, 1], (1, 1): [1, 1]}),
    ]


def dim_p_ring(p: int) -> Algebra:
    """Basis a, a^2, ..., a^p with a^(p+1) = 0."""
    check_prime(p)
    products = {}
    for i in range(1, p + 1):
        for j in range(i, p + 1):
            if i + j <= p:
                products[(i - 1, j - 1)] = _unit(p, i + j - 1)
    return Algebra.from_products(p, p, products)


def _wedge_index(k: int) -> Dict[Tuple[int, ...], int]:
    """Positions of e_i and e_i ^ e_j in the truncated exterior basis."""
    index = {(i,): i for i in range(k)}
    for position, pair in enumerate(itertools.combinations(range(k), 2), start=k):
        index[pair] = position
    return index


def truncated_exterior(k: int) -> Algebra:
    """Exterior algebra over GF(2) on k generators, positive degrees, truncated at length 2."""
    if k < 2:
        raise InvalidParameters(f"truncated exterior algebra needs k >= 2 generators, got {k}")
    index = _wedge_index(k)
    d = len(index)
    products = {pair: _unit(d, index[pair]) for pair in itertools.combinations(range(k), 2)}
    return Algebra.from_products(2, d, products)


def exterior_3() -> Algebra:
    """Positive-degree exterior algebra over GF(2) on e1, e2, e3.

    Basis: e1, e2, e3, e1^e2, e1^e3, e2^e3, e1^e2^e3.
    """
    index = _wedge_index(3)
    index[(0, 1, 2)] = 6
    products = {}
    for i, j in itertools.combinations(range(3), 2):
        products[(i, j)] = _unit(7, index[(i, j)])
    for i in range(3):
        for pair in itertools.combinations(range(3), 2):
            if i not in pair:
                products[(i, index[pair])] = _unit(7, 6)
    return Algebra.from_products(2, 7, products)


def poly_quotient(d: int, e: int, p: int = 2) -> Algebra:
    """GF(p)[x0, ..., xe] modulo x0^(d-e+1) and every product involving x1..xe.

    Basis: x0, x0^2, ..., x0^(d-e), then x1, ..., xe. When d - e = 1 all
    products vanish and the result is the zero algebra.
    """
    check_prime(p)
    if not 0 <= e < d:
        raise InvalidParameters(f"poly_quotient needs 0 <= e < d, got d={d}, e={e}")
    top = d - e
    products = {}
    for i in range(1, top + 1):
        for j in range(i, top + 1):
            if i + j <= top:
                products[(i - 1, j - 1)] = _unit(d, i + j - 1)
    return Algebra.from_products(p, d, products)


def _ints(name: str, fields: List[str]) -> List[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise InvalidParameters(f"gallery name {name!r} has a non-integer parameter") from None


def by_name(name: str) -> Algebra:
    """Resolve names like ``sym4-1``, ``dimp:3``, ``truncext:3``, ``ext3``, ``polyq:5:2:3``."""
    if name in ('sym4-1', 'sym4-2', 'sym4-3'):
        return sym4_rings()[int(name[-1]) - 1]
    if name == 'ext3':
        return exterior_3()
    kind, _, rest = name.partition(':')
    fields = rest.split(':') if rest else []
    if kind == 'dimp' and len(fields) == 1:
        return dim_p_ring(*_ints(name, fields))
    if kind == 'truncext' and len(fields) == 1:
        return truncated_exterior(*_ints(name, fields))
    if kind == 'polyq' and len(fields) in (2, 3):
        return poly_quotient(*_ints(name, fields))
    raise InvalidParameters(f"unknown gallery name {name!r}")


GALLERY_NAMES = (
    'sym4-1', 'sym4-2', 'sym4-3',
    'dimp:2', 'dimp:3', 'dimp:5',
    'truncext:2', 'truncext:3', 'ext3',
    'polyq:3:0', 'polyq:5:2', 'polyq:2:1', 'polyq:4:1:3',
)


def all_gallery() -> Dict[str, Algebra]:
    """Every named example, keyed by its gallery name."""
    return {name: by_name(name) for name in GALLERY_NAMES}
