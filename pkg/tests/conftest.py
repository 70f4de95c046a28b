import pytest

from radaff.gallery import all_gallery, sym4_rings
from radaff.radical_algebra import Algebra


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Run every test with the default search bounds."""
    for name in ('RADAFF_MAX_CANDIDATES', 'RADAFF_MAX_AFFINE', 'RADAFF_MAX_GL', 'RADAFF_CLOSURE_BOUND',
                 'RADAFF_MAX_ELEMENTS', 'RADAFF_EXHAUST_LIMIT', 'RADAFF_SAMPLE_PAIRS', 'RADAFF_SEED',
                 'RADAFF_WORKERS', 'RADAFF_LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rings():
    return sym4_rings()


@pytest.fixture
def zero22():
    return Algebra.zero(2, 2)


@pytest.fixture(scope='session')
def gallery():
    return all_gallery()


@pytest.fixture(scope='session')
def small_gallery():
    """Gallery algebras with at most 2^8 elements."""
    return {name: A for name, A in all_gallery().items() if A.p ** A.d <= 2 ** 8}
