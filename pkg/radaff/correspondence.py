"""Abelian regular subgroups of Aff(V) versus radical algebra structures on V.

For an algebra (V, +, .) the element tau(x) : z -> z (1 + delta(x)) + x
sends 0 to x, and T = {tau(x)} is an abelian regular subgroup; conversely
every abelian regular T arises this way from exactly one algebra, read off
from the linear parts gamma(x) = 1 + delta(x). Conjugating T by phi in GL(V)
corresponds to transporting the algebra along phi.
"""
import logging
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from .affine_group import (AffineElement, SubgroupElements, compose, intersect_translations,
                           inverse, is_abelian, is_regular, linear_map, translation)
from .errors import (BoundExceeded, Incompatible, InvalidParameters, NotAbelian, NotAssociative,
                     NotRadical, NotRegular, Singular, VerificationFailed)
from .ff_linalg import (Matrix, RowVector, all_vectors, general_linear, gl_order, mat_inverse,
                        rank, row_reduce)
from .models import FactCheck, FactsReport
from .radical_algebra import (Algebra, annihilator, batch_circle, batch_delta, batch_multiply,
                              delta_matrix, is_radical, push_forward)
from .utils.search_config import SearchConfig

logger = logging.getLogger(__name__)


class RegularSubgroup:
    """The family {tau(x) : x in V} attached to an algebra.

    Elements are produced on demand; :meth:`elements` materializes and caches
    all of them when p^d is within the element bound.
    """

    def __init__(self, algebra: Algebra):
        self.algebra = algebra
        self._elements: Optional[Dict[RowVector, AffineElement]] = None

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def d(self) -> int:
        return self.algebra.d

    @property
    def order(self) -> int:
        return self.p ** self.d

    def delta(self, x: RowVector) -> Matrix:
        return delta_matrix(self.algebra, x)

    def gamma(self, x: RowVector) -> Matrix:
        return Matrix.identity(self.p, self.d) + self.delta(x)

    def tau(self, x: RowVector) -> AffineElement:
        """tau(x) = gamma(x) followed by the translation by x."""
        if self._elements is not None and x in self._elements:
            return self._elements[x]
        try:
            return AffineElement(self.gamma(x), x)
        except Singular:
            raise NotRadical(f"1 + delta({list(x.as_tuple())}) is singular") from None

    def elements(self, max_elements: Optional[int] = None) -> Dict[RowVector, AffineElement]:
        """Every tau(x), keyed by x."""
        if self._elements is None:
            bound = SearchConfig.resolve('RADAFF_MAX_ELEMENTS', max_elements)
            if self.order > bound:
                raise BoundExceeded(f"|T| = {self.order} exceeds the element bound {bound}")
            vectors = all_vectors(self.p, self.d)
            gammas = _gammas(self.algebra, vectors)
            elements = {}
            for x, g in zip(vectors, gammas):
                shift = RowVector(x, self.p)
                elements[shift] = AffineElement(Matrix(g, self.p), shift, check=False)
            self._elements = elements
        return self._elements

    def as_subgroup(self) -> SubgroupElements:
        return SubgroupElements(self.elements().values(), validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegularSubgroup):
            return NotImplemented
        return self.algebra == other.algebra

    def __hash__(self) -> int:
        return hash(self.algebra)

    def __repr__(self) -> str:
        return f"RegularSubgroup({self.algebra!r})"


def _gammas(A: Algebra, X: np.ndarray) -> np.ndarray:
    return (np.eye(A.d, dtype=np.int64) + batch_delta(A, X)) % A.p


def _describe(**vectors: np.ndarray) -> str:
    return ', '.join(f"{name}={tuple(int(v) for v in value)}" for name, value in vectors.items())


def _pairs(A: Algebra, exhaustive: Optional[bool], seed: Optional[int]) -> Tuple[np.ndarray, np.ndarray, bool]:
    """Pairs (x, y) to test identities on: all of V x V, or basis pairs plus a seeded sample."""
    n = A.p ** A.d
    if exhaustive is None:
        exhaustive = n <= SearchConfig.exhaust_limit()
    if exhaustive:
        if n > SearchConfig.max_elements():
            raise BoundExceeded(f"exhaustive pair check over p^d = {n} elements is out of bounds")
        vectors = all_vectors(A.p, A.d)
        return np.repeat(vectors, n, axis=0), np.tile(vectors, (n, 1)), True

    eye = np.eye(A.d, dtype=np.int64)
    rng = np.random.default_rng(SearchConfig.seed() if seed is None else seed)
    count = SearchConfig.sample_pairs()
    X = np.concatenate([np.repeat(eye, A.d, axis=0), rng.integers(0, A.p, size=(count, A.d))])
    Y = np.concatenate([np.tile(eye, (A.d, 1)), rng.integers(0, A.p, size=(count, A.d))])
    return X, Y, False


def _check(name: str, ok: np.ndarray, X: np.ndarray, Y: np.ndarray) -> FactCheck:
    bad = np.flatnonzero(~ok)
    counterexample = _describe(x=X[bad[0]], y=Y[bad[0]]) if bad.size else None
    if counterexample:
        logger.warning(f"{name} fails at {counterexample}")
    return FactCheck(name=name, passed=not bad.size, checked_pairs=int(ok.shape[0]),
                     counterexample=counterexample)


def _rows_equal(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a == b).reshape(a.shape[0], -1).all(axis=1)


def verify_facts(A: Algebra, exhaustive: Optional[bool] = None, seed: Optional[int] = None) -> FactsReport:
    """Check the structural identities behind the correspondence.

    - commutes:        x delta(y) = y delta(x)
    - distributes:     delta is linear
    - preassociative:  delta(x delta(y)) = delta(x) delta(y)
    - tau_product:     tau(x) tau(y) = tau(x + y + x delta(y))

    Failures are reported, not raised.
    """
    p = A.p
    X, Y, exhaustive = _pairs(A, exhaustive, seed)
    DX, DY = batch_delta(A, X), batch_delta(A, Y)
    XY, YX = batch_multiply(A, X, Y), batch_multiply(A, Y, X)

    entries = [_check('commutes', _rows_equal(XY, YX), X, Y)]

    rng = np.random.default_rng(SearchConfig.seed() if seed is None else seed)
    scalars = rng.integers(0, p, size=(X.shape[0], 1))
    additive = _rows_equal(batch_delta(A, (X + Y) % p), (DX + DY) % p)
    homogeneous = _rows_equal(batch_delta(A, (scalars * X) % p), (scalars[:, :, np.newaxis] * DX) % p)
    entries.append(_check('distributes', additive & homogeneous, X, Y))

    entries.append(_check('preassociative', _rows_equal(batch_delta(A, XY), np.matmul(DX, DY) % p), X, Y))

    eye = np.eye(A.d, dtype=np.int64)
    GX, GY = (eye + DX) % p, (eye + DY) % p
    target = (X + Y + XY) % p
    linear_ok = _rows_equal(np.matmul(GX, GY) % p, _gammas(A, target))
    shift_ok = _rows_equal((np.einsum('ni,nik->nk', X, GY) + Y) % p, target)
    entries.append(_check('tau_product', linear_ok & shift_ok, X, Y))

    report = FactsReport(entries=entries, exhaustive=exhaustive)
    logger.debug(f"facts for {A!r}: {report.summary()} ({'exhaustive' if exhaustive else 'sampled'})")
    return report


def _batch_inverse(L: np.ndarray, S: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """Inverses of the affine elements (L[n], S[n]); each distinct L is inverted once."""
    distinct, positions = np.unique(L.reshape(L.shape[0], -1), axis=0, return_inverse=True)
    d = L.shape[1]
    inverses = np.stack([mat_inverse(Matrix(m.reshape(d, d), p)).rows for m in distinct])
    inv = inverses[positions.reshape(-1)]
    return inv, (-np.einsum('ni,nik->nk', S, inv)) % p


def _batch_compose(L1, S1, L2, S2, p):
    return np.matmul(L1, L2) % p, (np.einsum('ni,nik->nk', S1, L2) + S2) % p


def _span(vectors: List[RowVector], p: int, d: int) -> set:
    if not vectors:
        return {RowVector.zero(p, d)}
    combos = all_vectors(p, len(vectors)) @ np.stack([v.entries for v in vectors])
    return {RowVector(c, p) for c in combos % p}


def verify_group_facts(A: Algebra, exhaustive: Optional[bool] = None,
                       seed: Optional[int] = None) -> FactsReport:
    """Check the group-side consequences for a nilpotent algebra.

    - circle_isomorphism:  x -> tau(x) is an isomorphism (V, o) -> T
    - tau_action:          z tau(x) = z o x
    - commutator_product:  [tau_x, tau(y)] is the translation by x y
    - translation_meet:    N meet T = C_N(T) = C_T(N) = {tau_x : x in U}
      (exhaustive mode only)
    """
    p, d = A.p, A.d
    if not is_radical(A):
        raise NotRadical(f"{A!r} is not radical")
    X, Y, exhaustive = _pairs(A, exhaustive, seed)
    eye = np.eye(d, dtype=np.int64)
    GX, GY = _gammas(A, X), _gammas(A, Y)
    XoY = batch_circle(A, X, Y)

    L, S = _batch_compose(GX, X, GY, Y, p)
    homomorphism = _rows_equal(L, _gammas(A, XoY)) & _rows_equal(S, XoY)
    invertible = np.array([rank(Matrix(g, p)) == d for g in np.unique(GY, axis=0)]).all()
    entries = [_check('circle_isomorphism', homomorphism & invertible, X, Y)]

    # X plays z, Y plays x
    action = (np.einsum('ni,nik->nk', X, GY) + Y) % p
    entries.append(_check('tau_action', _rows_equal(action, XoY), X, Y))

    # tau_x^-1 tau(y)^-1 tau_x tau(y)
    identity = np.broadcast_to(eye, GX.shape)
    g_inv_L, g_inv_S = _batch_inverse(GY, Y, p)
    L, S = _batch_compose(identity, (-X) % p, g_inv_L, g_inv_S, p)
    L, S = _batch_compose(L, S, identity, X, p)
    L, S = _batch_compose(L, S, GY, Y, p)
    commutator_ok = _rows_equal(L, identity) & _rows_equal(S, batch_multiply(A, X, Y))
    entries.append(_check('commutator_product', commutator_ok, X, Y))

    if exhaustive:
        T = ring_to_subgroup(A, verify=False).as_subgroup()
        U = _span(annihilator(A), p, d)
        try:
            meet = intersect_translations(T)
        except VerificationFailed as e:
            passed, detail = False, str(e)
        else:
            passed = set(meet.elements) == {translation(u) for u in U}
            detail = None if passed else f"|N meet T| = {meet.order}, |U| = {len(U)}"
        entries.append(FactCheck(name='translation_meet', passed=passed, checked_pairs=T.order,
                                 counterexample=detail))

    return FactsReport(entries=entries, exhaustive=exhaustive)


def ring_to_subgroup(A: Algebra, verify: bool = True) -> RegularSubgroup:
    """The abelian regular subgroup {tau(x)} of a radical algebra."""
    if not is_radical(A):
        raise NotRadical(f"{A!r} is not radical, some 1 + delta(x) is singular")
    T = RegularSubgroup(A)
    if verify and T.order <= SearchConfig.exhaust_limit():
        report = verify_group_facts(A, exhaustive=True)
        if not report.passed:
            failed = [e.name for e in report.entries if not e.passed]
            raise VerificationFailed(f"tau-family of {A!r} fails {', '.join(failed)}")
        subgroup = T.as_subgroup()
        if not is_regular(subgroup):
            raise NotRegular("tau-family is not regular")
        if not is_abelian(subgroup):
            raise NotAbelian("tau-family is not abelian")
    return T


def subgroup_to_ring(T: Union[SubgroupElements, Iterable[AffineElement]]) -> Algebra:
    """Recover the algebra of an abelian regular subgroup.

    Elements are indexed by their 0-images; the structure constants are the
    rows of delta(e_j) = gamma(e_j) - 1.
    """
    if not isinstance(T, SubgroupElements):
        T = SubgroupElements(T)
    if not is_regular(T):
        raise NotRegular(f"subgroup of order {T.order} is not regular on GF({T.p})^{T.d}")
    if not is_abelian(T):
        raise NotAbelian("subgroup is not abelian")

    index = T.by_zero_image()
    sc = np.zeros((T.d, T.d, T.d), dtype=np.int64)
    eye = np.eye(T.d, dtype=np.int64)
    for j in range(T.d):
        (g,) = index[RowVector.basis(T.p, T.d, j)]
        sc[:, j, :] = (g.linear.rows - eye) % T.p
    try:
        algebra = Algebra(T.p, T.d, sc)
    except (InvalidParameters, NotAssociative) as e:
        raise VerificationFailed(f"extracted structure constants are not a commutative associative algebra: {e}") from e
    logger.debug(f"extracted {algebra!r} from a subgroup of order {T.order}")
    return algebra


def _conjugation_matches(T1: RegularSubgroup, T2: RegularSubgroup, phi: Matrix) -> bool:
    """phi^-1 tau_1(x) phi == tau_2(x phi) for every x."""
    g = linear_map(phi)
    g_inv = inverse(g)
    for x, t in T1.elements().items():
        if compose(compose(g_inv, t), g) != T2.tau(x @ phi):
            return False
    return True


def conjugate_subgroup(T: RegularSubgroup, phi: Matrix) -> RegularSubgroup:
    """The subgroup phi^-1 T phi, i.e. the tau-family of the transported algebra."""
    conjugated = RegularSubgroup(push_forward(T.algebra, phi))
    if T.order <= SearchConfig.max_elements() and not _conjugation_matches(T, conjugated, phi):
        raise VerificationFailed("conjugated tau-family disagrees with the transported algebra")
    return conjugated


def is_isomorphism(A1: Algebra, A2: Algebra, phi: Matrix) -> bool:
    """(e_i e_j) phi == (e_i phi)(e_j phi) for all basis pairs, phi invertible."""
    if (A1.p, A1.d) != (A2.p, A2.d) or (phi.p, phi.d) != (A1.p, A1.d):
        raise Incompatible("algebras and phi must share p and d")
    mat_inverse(phi)
    p = A1.p
    left = np.einsum('ijk,kl->ijl', A1.sc, phi.rows) % p
    right = np.einsum('ia,abk->ibk', phi.rows, A2.sc) % p
    right = np.einsum('jb,ibk->ijk', phi.rows, right) % p
    return bool(np.array_equal(left, right))


def iso_to_conjugacy(A1: Algebra, A2: Algebra, phi: Matrix) -> bool:
    """Whether phi is an isomorphism A1 -> A2; if so, phi^-1 T1 phi = T2 is asserted."""
    if not is_isomorphism(A1, A2, phi):
        return False
    T1, T2 = ring_to_subgroup(A1, verify=False), ring_to_subgroup(A2, verify=False)
    conjugated = conjugate_subgroup(T1, phi)
    if conjugated != T2:
        raise VerificationFailed("isomorphism does not conjugate the tau-families onto each other")
    if T1.order <= SearchConfig.max_elements() and not _conjugation_matches(T1, T2, phi):
        raise VerificationFailed("phi^-1 T1 phi differs from T2 elementwise")
    return True


def conjugacy_to_iso(T1: RegularSubgroup, T2: RegularSubgroup, phi: Matrix) -> bool:
    """Whether phi^-1 T1 phi = T2 as sets; if so, phi is asserted to be an isomorphism."""
    g = linear_map(phi)
    g_inv = inverse(g)
    targets = set(T2.elements().values())
    if any(compose(compose(g_inv, t), g) not in targets for t in T1.elements().values()):
        return False
    if not is_isomorphism(T1.algebra, T2.algebra, phi):
        raise VerificationFailed("conjugating matrix is not an algebra isomorphism")
    return True


def _extend_isomorphism(A1: Algebra, A2: Algebra, rows: List[np.ndarray],
                        candidates: np.ndarray) -> Optional[np.ndarray]:
    d, p = A1.d, A1.p
    r = len(rows)
    if r == d:
        return np.stack(rows)
    for w in candidates:
        row = w.copy()
        row[r] = (row[r] + 1) % p
        stacked = np.stack(rows + [row])
        if len(row_reduce(stacked, p)[1]) != r + 1:
            continue
        if _partial_consistent(A1, A2, stacked):
            found = _extend_isomorphism(A1, A2, rows + [row], candidates)
            if found is not None:
                return found
    return None


def _partial_consistent(A1: Algebra, A2: Algebra, rows: np.ndarray) -> bool:
    """Check basis products whose images are already determined by the fixed rows."""
    p, r = A1.p, rows.shape[0]
    for i in range(r):
        for j in range(i, r):
            product = A1.sc[i, j]
            if product[r:].any():
                continue
            image = (product[:r] @ rows) % p
            target = (rows[i] @ delta_matrix(A2, rows[j]).rows) % p
            if not np.array_equal(image, target):
                return False
    return True


def find_isomorphism(A1: Algebra, A2: Algebra, max_gl: Optional[int] = None) -> Optional[Matrix]:
    """Search GL(d, p) for an algebra isomorphism A1 -> A2.

    Matrices are visited as 1 + D with D in row-major lexicographic order,
    so the identity is tried first; rows are fixed one at a time and a
    branch is cut as soon as a determined basis product disagrees.
    """
    if (A1.p, A1.d) != (A2.p, A2.d):
        return None
    bound = SearchConfig.resolve('RADAFF_MAX_GL', max_gl)
    size = gl_order(A1.p, A1.d)
    if size > bound:
        raise BoundExceeded(f"|GL({A1.d}, {A1.p})| = {size} exceeds {bound}")
    if A1.is_zero() != A2.is_zero():
        return None
    candidates = all_vectors(A1.p, A1.d)
    found = _extend_isomorphism(A1, A2, [], candidates)
    if found is None:
        return None
    phi = Matrix(found, A1.p)
    if not is_isomorphism(A1, A2, phi):
        raise VerificationFailed("search returned a matrix that is not an isomorphism")
    return phi


def are_conjugate_by_exhaustion(T1: RegularSubgroup, T2: RegularSubgroup) -> Optional[Matrix]:
    """First phi in GL(V) with phi^-1 T1 phi = T2, trying every invertible matrix."""
    for phi in general_linear(T1.p, T1.d):
        if _conjugation_matches(T1, T2, phi):
            return phi
    return None
