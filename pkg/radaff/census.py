"""Exhaustive census of abelian regular subgroups for tiny (p, d).

Two independent routes are used: the algebra side filters every
structure-constant table, and the group side searches Aff(V) directly.
The algebras are then split into isomorphism classes, and each class is
checked against conjugacy of the matching subgroups.
"""
import logging
import re
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .affine_group import (AffineElement, SubgroupElements, affine_group_order, compose,
                           element_order, generate, is_regular)
from .correspondence import (are_conjugate_by_exhaustion, find_isomorphism, iso_to_conjugacy,
                             ring_to_subgroup, subgroup_to_ring)
from .errors import BoundExceeded, InvalidParameters, ParseError, SizeBoundExceeded, VerificationFailed
from .ff_linalg import RowVector, all_vectors, check_prime, general_linear, gl_order
from .formatter import format_algebra, parse_algebra
from .models import CensusClass, CensusReport, CensusResult, ClassFingerprint, ClassRecord
from .radical_algebra import (Algebra, abelian_type, annihilator, is_nilpotent,
                              triple_products_vanish, upper_pairs)
from .utils.search_config import SearchConfig

logger = logging.getLogger(__name__)

# Candidate tables are filtered in blocks of this many rows.
_BLOCK = 4096


def parameter_count(d: int) -> int:
    """Number of free structure constants: d coordinates for each e_i e_j, i <= j."""
    return d * d * (d + 1) // 2


def _tables(p: int, d: int, params: np.ndarray) -> np.ndarray:
    """Stack of symmetric structure-constant arrays from rows of parameters."""
    pairs = upper_pairs(d)
    products = params.reshape(params.shape[0], len(pairs), d)
    sc = np.zeros((params.shape[0], d, d, d), dtype=np.int64)
    for index, (i, j) in enumerate(pairs):
        sc[:, i, j] = products[:, index]
        sc[:, j, i] = products[:, index]
    return sc


def _associative(sc: np.ndarray, p: int) -> np.ndarray:
    """Mask of tables with (e_i e_j) e_k = e_i (e_j e_k) on every basis triple."""
    left = np.einsum('nijm,nmkl->nijkl', sc, sc) % p
    right = np.einsum('njkm,niml->nijkl', sc, sc) % p
    return (left == right).reshape(sc.shape[0], -1).all(axis=1)


def _scan_shard(p: int, d: int, shard: int) -> List[Tuple[int, ...]]:
    """Parameters of the nilpotent algebras whose e_1 e_1 is the shard-th vector."""
    head = all_vectors(p, d)[shard]
    rest = all_vectors(p, parameter_count(d) - d)
    found = []
    for start in range(0, rest.shape[0], _BLOCK):
        block = rest[start:start + _BLOCK]
        params = np.concatenate([np.broadcast_to(head, (block.shape[0], d)), block], axis=1)
        sc = _tables(p, d, params)
        keep = _associative(sc, p)
        for row, table in zip(params[keep], sc[keep]):
            algebra = Algebra(p, d, table, validate=False)
            if is_nilpotent(algebra).nilpotent:
                found.append(tuple(int(v) for v in row))
    return found


def enumerate_algebras(p: int, d: int, max_candidates: Optional[int] = None,
                       workers: Optional[int] = None) -> List[Algebra]:
    """Every commutative associative nilpotent algebra structure on GF(p)^d.

    Args:
        p: The prime.
        d: The dimension.
        max_candidates: Bound on p^(d * d(d+1)/2), the number of tables tried.
        workers: Processes used for the shards; 1 scans in this process.

    Returns:
        The algebras, sorted by their parameter tuples (the zero algebra first).
    """
    check_prime(p)
    if d < 1:
        raise InvalidParameters(f"dimension must be positive, got {d}")
    bound = SearchConfig.resolve('RADAFF_MAX_CANDIDATES', max_candidates)
    workers = SearchConfig.resolve('RADAFF_WORKERS', workers)
    total = p ** parameter_count(d)
    if total > bound:
        raise BoundExceeded(f"{total} candidate tables for p={p}, d={d} exceed {bound}")

    shards = [(p, d, shard) for shard in range(p ** d)]
    logger.debug(f"scanning {total} tables in {len(shards)} shards with {workers} worker(s)")
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.starmap(_scan_shard, shards)
    else:
        results = [_scan_shard(*shard) for shard in shards]

    params = sorted(row for shard in results for row in shard)
    algebras = [Algebra.from_params(p, d, row) for row in params]
    logger.info(f"p={p}, d={d}: {len(algebras)} nilpotent algebras among {total} tables")
    return algebras


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def enumerate_subgroups(p: int, d: int, max_affine: Optional[int] = None) -> List[SubgroupElements]:
    """Every abelian regular subgroup of Aff(GF(p)^d), found without any algebra.

    The search fixes generators one at a time: the next generator is an
    element sending 0 to the least vector not yet reached by the closure of
    the current generators. Such an element commutes with the generators,
    has p-power order, and keeps the 0-images of the closure distinct.
    Every subgroup is reached along exactly one path.
    """
    check_prime(p)
    bound = SearchConfig.resolve('RADAFF_MAX_AFFINE', max_affine)
    size = affine_group_order(p, d)
    if size > bound:
        raise BoundExceeded(f"|Aff({d}, {p})| = {size} exceeds {bound}")

    target = p ** d
    linear_parts = list(general_linear(p, d))
    candidates: Dict[RowVector, List[AffineElement]] = {}
    for x in all_vectors(p, d)[1:]:
        shift = RowVector(x, p)
        options = []
        for A in linear_parts:
            g = AffineElement(A, shift, check=False)
            try:
                order = element_order(g, bound=target)
            except SizeBoundExceeded:
                continue
            if _is_p_power(order, p):
                options.append(g)
        candidates[shift] = options

    found: List[SubgroupElements] = []

    def extend(gens: List[AffineElement], closure: SubgroupElements) -> None:
        if closure.order == target:
            found.append(closure)
            return
        reached = closure.by_zero_image()
        shift = next(RowVector(x, p) for x in all_vectors(p, d) if RowVector(x, p) not in reached)
        for g in candidates[shift]:
            if any(compose(g, h) != compose(h, g) for h in gens):
                continue
            try:
                grown = generate(gens + [g], max_size=target)
            except SizeBoundExceeded:
                continue
            if len(grown.by_zero_image()) == grown.order:
                extend(gens + [g], grown)

    extend([], generate([], p=p, d=d))
    found.sort(key=lambda T: [g.key() for g in T])
    for T in found:
        if not is_regular(T):
            raise VerificationFailed(f"group-side search produced a non-regular subgroup {T!r}")
    logger.info(f"p={p}, d={d}: {len(found)} abelian regular subgroups of Aff")
    return found


def fingerprint(A: Algebra) -> ClassFingerprint:
    """Isomorphism invariants of A (equivalently, conjugacy invariants of its subgroup)."""
    nil = is_nilpotent(A)
    if not nil.nilpotent:
        raise VerificationFailed(f"{A!r} is not nilpotent")
    dim_u = len(annihilator(A))
    if dim_u == 0:
        raise VerificationFailed(f"{A!r} has trivial annihilator, so T meets N trivially")
    return ClassFingerprint(
        abelian_type=list(abelian_type(A).orders),
        dim_u=dim_u,
        nil_class=nil.nil_class,
        normalized_by_n=triple_products_vanish(A),
    )


def _check_non_conjugate(reps: List[Algebra]) -> None:
    subgroups = [ring_to_subgroup(A, verify=False) for A in reps]
    for i, T1 in enumerate(subgroups):
        for T2 in subgroups[i + 1:]:
            phi = are_conjugate_by_exhaustion(T1, T2)
            if phi is not None:
                raise VerificationFailed(f"non-isomorphic {T1.algebra!r} and {T2.algebra!r} "
                                         f"have subgroups conjugate by {phi.tolist()}")


def classify(algebras: Sequence[Algebra], max_gl: Optional[int] = None) -> CensusResult:
    """Partition algebras into isomorphism classes.

    Algebras are visited in parameter order and merged into the first class
    whose representative is isomorphic to them, so each representative is
    the least member of its class. Every witness is checked to conjugate
    the subgroups onto each other; for small spaces, representatives are
    checked pairwise non-conjugate by trying all of GL(V).
    """
    algebras = sorted(algebras, key=Algebra.params)
    if not algebras:
        return CensusResult(p=0, d=0)
    p, d = algebras[0].p, algebras[0].d

    classes: List[CensusClass] = []
    for A in algebras:
        if (A.p, A.d) != (p, d):
            raise VerificationFailed("census algebras must share p and d")
        invariants = fingerprint(A)
        for entry in classes:
            if entry.fingerprint != invariants:
                continue
            phi = find_isomorphism(entry.representative, A, max_gl=max_gl)
            if phi is None:
                continue
            if p ** d <= SearchConfig.max_elements() and not iso_to_conjugacy(entry.representative, A, phi):
                raise VerificationFailed(f"witness {phi.tolist()} rejected for {A!r}")
            entry.members.append(A)
            break
        else:
            classes.append(CensusClass(representative=A, members=[A], fingerprint=invariants))

    if p ** d <= SearchConfig.exhaust_limit() and gl_order(p, d) <= SearchConfig.max_gl():
        _check_non_conjugate([entry.representative for entry in classes])

    logger.info(f"p={p}, d={d}: {len(algebras)} algebras in {len(classes)} classes")
    return CensusResult(p=p, d=d, algebras=list(algebras), classes=classes)


def two_route_agreement(algebras: Sequence[Algebra], subgroups: Sequence[SubgroupElements]) -> bool:
    """Whether tau-families of the algebras are exactly the group-side subgroups."""
    from_algebras = {frozenset(ring_to_subgroup(A).as_subgroup().elements) for A in algebras}
    from_groups = {frozenset(T.elements) for T in subgroups}
    if len(from_algebras) != len(algebras) or from_algebras != from_groups:
        logger.error(f"{len(from_algebras)} subgroups from algebras, {len(from_groups)} found directly")
        return False
    known = set(algebras)
    return all(subgroup_to_ring(T) in known for T in subgroups)


def run_census(p: int, d: int, workers: Optional[int] = None,
               cross_check: Optional[bool] = None) -> CensusResult:
    """Enumerate and classify; run the group-side search too when Aff(V) is small enough.

    With ``cross_check=None`` the group-side route runs whenever |Aff(V)| is
    within RADAFF_MAX_AFFINE.
    """
    algebras = enumerate_algebras(p, d, workers=workers)
    result = classify(algebras)
    if not algebras:
        result = CensusResult(p=p, d=d)
    if cross_check is None:
        cross_check = affine_group_order(p, d) <= SearchConfig.max_affine()
    if cross_check:
        subgroups = enumerate_subgroups(p, d)
        result.two_route_agreement = two_route_agreement(algebras, subgroups)
    return result


def census_report(result: CensusResult) -> str:
    """Plain-text report: a header, then per class a record line and its representative."""
    lines = [f"census p={result.p} d={result.d} algebras={len(result.algebras)} classes={len(result.classes)}"]
    for entry in sorted(result.classes, key=lambda c: c.representative.params()):
        fp = entry.fingerprint
        lines.append(f"class size={entry.size} type={','.join(str(o) for o in fp.abelian_type)} "
                     f"dimU={fp.dim_u} nilclass={fp.nil_class} normalized_by_N={int(fp.normalized_by_n)}")
        lines.append(format_algebra(entry.representative).rstrip('\n'))
    return '\n'.join(lines) + '\n'


_HEADER = re.compile(r'^census p=(\d+) d=(\d+) algebras=(\d+) classes=(\d+)$')
_CLASS = re.compile(r'^class size=(\d+) type=([\d,]+) dimU=(\d+) nilclass=(\d+) normalized_by_N=([01])$')


def parse_census_report(text: str) -> CensusReport:
    """Read a report written by :func:`census_report`."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty census report", line=1)
    header = _HEADER.match(lines[0].strip())
    if header is None:
        raise ParseError(f"bad census header {lines[0]!r}", line=1)
    p, d, n_algebras, n_classes = (int(v) for v in header.groups())

    records: List[Tuple[int, re.Match, List[str]]] = []
    for number, line in enumerate(lines[1:], start=2):
        match = _CLASS.match(line.strip())
        if match is not None:
            records.append((number, match, []))
        elif not records:
            if line.strip():
                raise ParseError(f"text before the first class record: {line!r}", line=number)
        else:
            records[-1][2].append(line)

    classes = []
    for number, match, body in records:
        size, orders, dim_u, nil_class, normalized = match.groups()
        representative = '\n'.join(body) + '\n'
        try:
            parse_algebra(representative)
        except ParseError as e:
            raise ParseError(f"class record representative: {e}", line=number) from e
        classes.append(ClassRecord(
            size=int(size),
            fingerprint=ClassFingerprint(abelian_type=[int(o) for o in orders.split(',')],
                                         dim_u=int(dim_u), nil_class=int(nil_class),
                                         normalized_by_n=normalized == '1'),
            representative_text=representative,
        ))
    if len(classes) != n_classes:
        raise ParseError(f"header announces {n_classes} classes, found {len(classes)}")
    if sum(c.size for c in classes) != n_algebras:
        raise ParseError(f"class sizes do not add up to {n_algebras} algebras")
    return CensusReport(p=p, d=d, n_algebras=n_algebras, classes=classes)
