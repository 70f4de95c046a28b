"""
radaff: abelian regular subgroups of affine groups over GF(p)

Builds the abelian regular subgroup of Aff(GF(p)^d) attached to a
commutative nilpotent algebra and back, verifies the identities that make
the two sides correspond, and classifies both for small p and d.
"""
from .errors import (
    RadaffError,
    InvalidParameters,
    Incompatible,
    Singular,
    ParseError,
    BoundExceeded,
    PrecisionExhausted,
    VerificationFailed,
)
from .ff_linalg import Matrix, RowVector, Scalar
from .affine_group import AffineElement, SubgroupElements
from .radical_algebra import Algebra, AbelianType
from .correspondence import (
    RegularSubgroup,
    ring_to_subgroup,
    subgroup_to_ring,
    verify_facts,
    verify_group_facts,
    conjugate_subgroup,
    iso_to_conjugacy,
    find_isomorphism,
)
from .census import enumerate_algebras, enumerate_subgroups, classify, census_report, run_census
from .power_series import TruncSeries
from .models import FactsReport, CensusResult

__version__ = "0.1.0"

__all__ = [
    'RadaffError', 'InvalidParameters', 'Incompatible', 'Singular', 'ParseError',
    'BoundExceeded', 'PrecisionExhausted', 'VerificationFailed',
    'Matrix', 'RowVector', 'Scalar', 'AffineElement', 'SubgroupElements',
    'Algebra', 'AbelianType', 'RegularSubgroup',
    'ring_to_subgroup', 'subgroup_to_ring', 'verify_facts', 'verify_group_facts',
    'conjugate_subgroup', 'iso_to_conjugacy', 'find_isomorphism',
    'enumerate_algebras', 'enumerate_subgroups', 'classify', 'census_report', 'run_census',
    'TruncSeries', 'FactsReport', 'CensusResult',
]
