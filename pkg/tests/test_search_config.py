import logging

import pytest

from radaff.errors import InvalidParameters
from radaff.utils import SearchConfig


def test_defaults():
    assert SearchConfig.max_candidates() == 2 ** 24
    assert SearchConfig.max_elements() == 4096
    assert SearchConfig.workers() == 1
    assert SearchConfig.log_level() == logging.WARNING


def test_environment_override(monkeypatch):
    monkeypatch.setenv('RADAFF_MAX_GL', ' 500 ')
    assert SearchConfig.max_gl() == 500
    assert SearchConfig.snapshot()['RADAFF_MAX_GL'] == 500


def test_blank_value_uses_default(monkeypatch):
    monkeypatch.setenv('RADAFF_SEED', '')
    assert SearchConfig.seed() == 20240229


@pytest.mark.parametrize('raw', ['many', '0', '-3', '1.5'])
def test_malformed_value(monkeypatch, raw):
    monkeypatch.setenv('RADAFF_EXHAUST_LIMIT', raw)
    with pytest.raises(InvalidParameters, match='RADAFF_EXHAUST_LIMIT'):
        SearchConfig.exhaust_limit()


def test_unknown_setting():
    with pytest.raises(InvalidParameters):
        SearchConfig.get_int('RADAFF_NOTHING')


def test_resolve_prefers_override(monkeypatch):
    monkeypatch.setenv('RADAFF_MAX_AFFINE', '10')
    assert SearchConfig.resolve('RADAFF_MAX_AFFINE', 99) == 99
    assert SearchConfig.resolve('RADAFF_MAX_AFFINE') == 10
    with pytest.raises(InvalidParameters):
        SearchConfig.resolve('RADAFF_MAX_AFFINE', 0)


def test_log_level(monkeypatch):
    monkeypatch.setenv('RADAFF_LOG_LEVEL', 'info')
    assert SearchConfig.log_level() == logging.INFO
    assert SearchConfig.log_level(debug=True) == logging.DEBUG
    monkeypatch.setenv('RADAFF_LOG_LEVEL', 'loud')
    with pytest.raises(InvalidParameters):
        SearchConfig.log_level()
