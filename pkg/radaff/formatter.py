"""Text formats: algebra files, affine-element files and series literals.

Algebra file::

    p 2
    d 2
    sc 1 1 2 1        # e1 e1 has coordinate 1 on e2

Indices are 1-based with i <= j; omitted constants are zero.

Affine-element file::

    p 2
    d 2
    elem
    1 0
    0 1
    shift 1 0

Series literal: ``p=2 prec=8 coeffs=0,1`` (c_1, c_2, ... with trailing zeros
dropped; the zero series is ``coeffs=0``).
"""
import logging
import re
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .affine_group import AffineElement
from .errors import InvalidParameters, ParseError, Singular
from .ff_linalg import Matrix, RowVector, check_prime, rank
from .power_series import DEFAULT_PRECISION, TruncSeries, is_zero
from .radical_algebra import Algebra, upper_pairs

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    """Non-blank lines with comments removed, as (line number, tokens)."""
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split('#', 1)[0].split()
        if tokens:
            lines.append((number, tokens))
    return lines


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line=number) from None


def _header(lines: List[Tuple[int, List[str]]]) -> Tuple[int, int]:
    """Read the ``p <prime>`` and ``d <dim>`` lines."""
    values = []
    for position, key in enumerate(('p', 'd')):
        if position >= len(lines):
            raise ParseError(f"missing '{key}' header line", line=lines[-1][0] + 1 if lines else 1)
        number, tokens = lines[position]
        if len(tokens) != 2 or tokens[0] != key:
            raise ParseError(f"expected '{key} <integer>', got {' '.join(tokens)!r}", line=number)
        values.append(_int(tokens[1], number))
    p, d = values
    try:
        check_prime(p)
    except InvalidParameters as e:
        raise ParseError(str(e), line=lines[0][0]) from None
    if d < 1:
        raise ParseError(f"dimension must be positive, got {d}", line=lines[1][0])
    return p, d


def parse_algebra(text: str, validate: bool = True) -> Algebra:
    """Parse the algebra text format.

    Args:
        text: File contents.
        validate: Check associativity while building the algebra.

    Returns:
        The algebra.

    Raises:
        ParseError: Malformed, out-of-range or duplicate entries.
    """
    lines = _content_lines(text)
    p, d = _header(lines)
    sc = np.zeros((d, d, d), dtype=np.int64)
    seen = set()
    for number, tokens in lines[2:]:
        if tokens[0] != 'sc' or len(tokens) != 5:
            raise ParseError(f"expected 'sc <i> <j> <k> <value>', got {' '.join(tokens)!r}", line=number)
        i, j, k, value = (_int(t, number) for t in tokens[1:])
        if not (1 <= i <= j <= d and 1 <= k <= d):
            raise ParseError(f"indices ({i}, {j}, {k}) need 1 <= i <= j <= {d}, 1 <= k <= {d}", line=number)
        if not 0 < value < p:
            raise ParseError(f"value {value} must lie in 1..{p - 1}", line=number)
        if (i, j, k) in seen:
            raise ParseError(f"duplicate entry for ({i}, {j}, {k})", line=number)
        seen.add((i, j, k))
        sc[i - 1, j - 1, k - 1] = value
        sc[j - 1, i - 1, k - 1] = value
    return Algebra(p, d, sc, validate=validate)


def format_algebra(A: Algebra, comments: Optional[Sequence[str]] = None) -> str:
    """Emit the algebra text format; nonzero constants in (i, j, k) order."""
    lines = [f"# {c}" for c in comments or ()]
    lines += [f"p {A.p}", f"d {A.d}"]
    for i, j in upper_pairs(A.d):
        for k in range(A.d):
            value = int(A.sc[i, j, k])
            if value:
                lines.append(f"sc {i + 1} {j + 1} {k + 1} {value}")
    return '\n'.join(lines) + '\n'


def parse_affine(text: str) -> Tuple[int, int, List[AffineElement]]:
    """Parse an affine-element file into (p, d, elements).

    Raises:
        ParseError: Malformed input, with the line number.
        Singular: A linear part is not invertible; ``index`` is the 0-based element position.
    """
    lines = _content_lines(text)
    p, d = _header(lines)
    body = lines[2:]
    elements = []
    position = 0
    while position < len(body):
        number, tokens = body[position]
        if tokens != ['elem']:
            raise ParseError(f"expected 'elem', got {' '.join(tokens)!r}", line=number)
        block = body[position + 1:position + d + 2]
        if len(block) != d + 1:
            raise ParseError(f"element needs {d} matrix rows and a shift row", line=number)
        rows = []
        for row_number, row in block[:d]:
            if len(row) != d:
                raise ParseError(f"matrix row needs {d} entries", line=row_number)
            rows.append([_int(t, row_number) for t in row])
        shift_number, shift = block[d]
        if shift[0] != 'shift' or len(shift) != d + 1:
            raise ParseError(f"expected 'shift' followed by {d} integers", line=shift_number)
        linear = Matrix(rows, p)
        if rank(linear) != d:
            raise Singular(f"element {len(elements)} (line {number}) has a singular linear part",
                           index=len(elements))
        elements.append(AffineElement(linear, RowVector([_int(t, shift_number) for t in shift[1:]], p),
                                      check=False))
        position += d + 2
    logger.debug(f"parsed {len(elements)} affine elements over GF({p})^{d}")
    return p, d, elements


def format_affine(elements: Iterable[AffineElement], p: int, d: int) -> str:
    lines = [f"p {p}", f"d {d}"]
    for g in elements:
        lines.append('elem')
        lines.extend(' '.join(str(v) for v in row) for row in g.linear.tolist())
        lines.append('shift ' + ' '.join(str(v) for v in g.shift.as_tuple()))
    return '\n'.join(lines) + '\n'


_LITERAL = re.compile(r'^(p|prec|coeffs)=(.+)$')


def parse_series_literal(tokens: Sequence[str]) -> TruncSeries:
    """Parse ``p=<p> prec=<n> coeffs=<c1,c2,...>``; ``prec`` defaults to 64."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    fields = {}
    for token in tokens:
        match = _LITERAL.match(token)
        if match is None:
            raise ParseError(f"unrecognized series field {token!r}")
        key, value = match.groups()
        if key in fields:
            raise ParseError(f"series field {key!r} given twice")
        fields[key] = value
    if 'p' not in fields or 'coeffs' not in fields:
        raise ParseError("a series literal needs p=<prime> and coeffs=<c1,...>")
    try:
        p = int(fields['p'])
        prec = int(fields.get('prec', DEFAULT_PRECISION))
        coeffs = tuple(int(c) for c in fields['coeffs'].split(','))
    except ValueError:
        raise ParseError(f"series fields must be integers: {' '.join(tokens)!r}") from None
    try:
        return TruncSeries(p, prec, coeffs)
    except InvalidParameters as e:
        raise ParseError(str(e)) from None


def format_series_literal(x: TruncSeries) -> str:
    coeffs = list(x.coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return f"p={x.p} prec={x.prec} coeffs={','.join(str(c) for c in coeffs) or '0'}"


def format_series(x: TruncSeries) -> str:
    """Human-readable form such as ``2t + t^3``; zero prints as ``0``."""
    if is_zero(x):
        return '0'
    terms = []
    for i, c in enumerate(x.coeffs, start=1):
        if c:
            power = 't' if i == 1 else f't^{i}'
            terms.append(power if c == 1 else f"{c}{power}")
    return ' + '.join(terms)
