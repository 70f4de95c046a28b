"""Command-line interface for radaff."""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from .affine_group import SubgroupElements, generate
from .census import census_report, run_census
from .correspondence import ring_to_subgroup, subgroup_to_ring, verify_facts, verify_group_facts
from .errors import ParseError, RadaffError
from .ff_linalg import RowVector, all_vectors
from .formatter import (format_affine, format_algebra, format_series, format_series_literal,
                        parse_affine, parse_algebra, parse_series_literal)
from .gallery import GALLERY_NAMES, by_name
from .power_series import (annihilator_witness, circle_multiple, torsion_check, ts_circle_inverse,
                           ts_multiply)
from .radical_algebra import is_nilpotent
from .utils.search_config import SearchConfig

logger = logging.getLogger(__name__)

# Status messages go to stderr; stdout only carries reports.
console = Console(stderr=True)


def print_success(message: str):
    """Print a success message."""
    console.print(f"[green]✓ {escape(message)}[/green]", highlight=False)


def print_warning(message: str):
    """Print a warning message."""
    console.print(f"[yellow]⚠ {escape(message)}[/yellow]", highlight=False)


def print_error(message: str):
    """Print an error message."""
    console.print(f"[red]✗ {escape(message)}[/red]", highlight=False)


def setup_logging(debug: bool = False) -> None:
    logging.basicConfig(
        level=SearchConfig.log_level(debug),
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def read_input(path: str) -> str:
    """Contents of ``path``, or of stdin for ``-``."""
    if path == '-':
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def parse_affine_file(path: str):
    """Affine elements listed in an affine-element file."""
    return parse_affine(read_input(path))[2]


def cmd_verify(args) -> int:
    A = parse_algebra(read_input(args.file), validate=False)
    associative = A.associativity_defect()
    nil = is_nilpotent(A)
    facts = verify_facts(A, exhaustive=True if args.exhaustive else None)
    parts = [
        f"commutative: {'ok' if A.is_commutative() else 'FAIL'}",
        f"associative: {'ok' if associative is None else 'FAIL'}",
        f"nilpotent: {f'class {nil.nil_class}' if nil.nilpotent else 'no'}",
        f"facts: {facts.summary()}",
    ]
    passed = associative is None and nil.nilpotent and facts.passed
    if args.group and nil.nilpotent:
        group = verify_group_facts(A, exhaustive=True if args.exhaustive else None)
        parts.append(f"group facts: {group.summary()}")
        passed = passed and group.passed
        facts.entries.extend(group.entries)
    print(', '.join(parts))
    for entry in facts.entries:
        if not entry.passed:
            print_warning(f"{entry.name} fails at {entry.counterexample}")
    if associative is not None:
        i, j, k = associative
        print_warning(f"(e{i + 1} e{j + 1}) e{k + 1} != e{i + 1} (e{j + 1} e{k + 1})")
    return 0 if passed else 1


def cmd_to_subgroup(args) -> int:
    A = parse_algebra(read_input(args.file))
    T = ring_to_subgroup(A)
    if args.basis:
        xs = [A.basis(i) for i in range(A.d)]
    else:
        xs = [RowVector(x, A.p) for x in all_vectors(A.p, A.d)]
    print(format_affine((T.tau(x) for x in xs), A.p, A.d), end='')
    return 0


def cmd_from_subgroup(args) -> int:
    p, d, elements = parse_affine(read_input(args.file))
    if args.generate:
        T = generate(elements, p=p, d=d)
    else:
        T = SubgroupElements(elements, p=p, d=d)
    print(format_algebra(subgroup_to_ring(T)), end='')
    return 0


def cmd_census(args) -> int:
    result = run_census(args.p, args.d, workers=args.workers)
    print(census_report(result), end='')
    if result.two_route_agreement is False:
        print_error("algebra-side and group-side censuses disagree")
        return 1
    if result.two_route_agreement:
        print_success(f"both routes found {len(result.algebras)} subgroups")
    return 0


def cmd_gallery(args) -> int:
    if args.name is None:
        print('\n'.join(GALLERY_NAMES))
        return 0
    print(format_algebra(by_name(args.name)), end='')
    return 0


def cmd_series(args) -> int:
    x = parse_series_literal(args.literal)
    if args.torsion is not None:
        result = torsion_check(x, args.torsion)
        n = x.p ** args.torsion
        print(f"{n}∘x = {format_series(circle_multiple(x, n))}, {'zero' if result.is_zero else 'nonzero'}")
    elif args.inverse:
        y = ts_circle_inverse(x)
        print(f"inverse = {format_series(y)}")
        print(format_series_literal(y))
    else:
        t = annihilator_witness(x)
        print(f"x·t = {format_series(ts_multiply(x, t))}, nonzero")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='radaff',
        description="Abelian regular subgroups of affine groups and radical algebras over GF(p)",
    )
    parser.add_argument('--debug', action='store_true', help="Enable debug logging")
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help="Check algebra axioms and the correspondence identities")
    verify.add_argument('file', help="Algebra file, or - for stdin")
    verify.add_argument('--exhaustive', action='store_true', help="Check every pair in V x V")
    verify.add_argument('--group', action='store_true', help="Also check the group-side identities")
    verify.set_defaults(handler=cmd_verify)

    to_subgroup = sub.add_parser('to-subgroup', help="Emit tau(x) for an algebra")
    to_subgroup.add_argument('file')
    to_subgroup.add_argument('--basis', action='store_true', help="Only tau(e_i) for basis vectors")
    to_subgroup.set_defaults(handler=cmd_to_subgroup)

    from_subgroup = sub.add_parser('from-subgroup', help="Recover the algebra of a subgroup")
    from_subgroup.add_argument('file')
    from_subgroup.add_argument('--generate', action='store_true',
                               help="Treat the elements as generators and close them first")
    from_subgroup.set_defaults(handler=cmd_from_subgroup)

    census = sub.add_parser('census', help="Enumerate and classify all algebras on GF(p)^d")
    census.add_argument('-p', type=int, required=True)
    census.add_argument('-d', type=int, required=True)
    census.add_argument('--workers', type=int, default=None, help="Processes for the table scan")
    census.set_defaults(handler=cmd_census)

    gallery = sub.add_parser('gallery', help="Emit a named example algebra")
    gallery.add_argument('name', nargs='?', help="Example name; omit to list names")
    gallery.set_defaults(handler=cmd_gallery)

    series = sub.add_parser('series', help="Power-series demonstrations")
    series.add_argument('literal', nargs='+', help="p=<p> prec=<n> coeffs=<c1,c2,...>")
    action = series.add_mutually_exclusive_group(required=True)
    action.add_argument('--torsion', type=int, metavar='J', help="Compute p^J o x")
    action.add_argument('--inverse', action='store_true', help="Circle inverse of x")
    action.add_argument('--annihilator', action='store_true', help="Witness that x annihilates nothing")
    series.set_defaults(handler=cmd_series)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        setup_logging(args.debug)
        return args.handler(args)
    except RadaffError as e:
        logger.debug(f"{type(e).__name__} in {args.command}", exc_info=True)
        print_error(str(e))
        return e.exit_code


def main():
    sys.exit(run())
