"""Utility module for search bounds and runtime knobs read from the environment."""
import logging
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from radaff.errors import InvalidParameters

# Load environment variables
load_dotenv()


class SearchConfig:
    """Resolves search bounds from ``RADAFF_*`` environment variables."""

    # Variable name -> default value
    DEFAULTS = {
        'RADAFF_MAX_CANDIDATES': 2 ** 24,
        'RADAFF_MAX_AFFINE': 10 ** 4,
        'RADAFF_MAX_GL': 10 ** 7,
        'RADAFF_CLOSURE_BOUND': 2 ** 16,
        'RADAFF_MAX_ELEMENTS': 2 ** 12,
        'RADAFF_EXHAUST_LIMIT': 2 ** 8,
        'RADAFF_SAMPLE_PAIRS': 10 ** 4,
        'RADAFF_SEED': 20240229,
        'RADAFF_WORKERS': 1,
    }

    LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

    @classmethod
    def get_int(cls, name: str) -> int:
        """Get a positive integer setting, falling back to its default."""
        if name not in cls.DEFAULTS:
            raise InvalidParameters(f"Unknown setting: {name}")

        raw = os.getenv(name)
        if raw is None or not raw.strip():
            return cls.DEFAULTS[name]

        try:
            value = int(raw.strip())
        except ValueError:
            raise InvalidParameters(f"{name} must be an integer, got {raw!r}") from None
        if value < 1:
            raise InvalidParameters(f"{name} must be positive, got {value}")
        return value

    @classmethod
    def max_candidates(cls) -> int:
        """Bound on structure-constant tables examined by the algebra census."""
        return cls.get_int('RADAFF_MAX_CANDIDATES')

    @classmethod
    def max_affine(cls) -> int:
        """Bound on |Aff(V)| for the group-side census."""
        return cls.get_int('RADAFF_MAX_AFFINE')

    @classmethod
    def max_gl(cls) -> int:
        return cls.get_int('RADAFF_MAX_GL')

    @classmethod
    def closure_bound(cls) -> int:
        return cls.get_int('RADAFF_CLOSURE_BOUND')

    @classmethod
    def max_elements(cls) -> int:
        """Bound on p^d for sweeps over every element of V."""
        return cls.get_int('RADAFF_MAX_ELEMENTS')

    @classmethod
    def exhaust_limit(cls) -> int:
        """Bound on p^d for sweeps over every pair in V x V."""
        return cls.get_int('RADAFF_EXHAUST_LIMIT')

    @classmethod
    def sample_pairs(cls) -> int:
        return cls.get_int('RADAFF_SAMPLE_PAIRS')

    @classmethod
    def seed(cls) -> int:
        return cls.get_int('RADAFF_SEED')

    @classmethod
    def workers(cls) -> int:
        return cls.get_int('RADAFF_WORKERS')

    @classmethod
    def log_level(cls, debug: bool = False) -> int:
        """Get the logging level; ``debug`` wins over the environment."""
        if debug:
            return logging.DEBUG
        name = os.getenv('RADAFF_LOG_LEVEL', 'WARNING').strip().upper()
        if name not in cls.LOG_LEVELS:
            raise InvalidParameters(f"RADAFF_LOG_LEVEL must be one of {', '.join(cls.LOG_LEVELS)}")
        return getattr(logging, name)

    @classmethod
    def resolve(cls, name: str, override: Optional[int] = None) -> int:
        """Use an explicit override when given, else the environment."""
        if override is not None:
            if override < 1:
                raise InvalidParameters(f"{name} override must be positive, got {override}")
            return override
        return cls.get_int(name)

    @classmethod
    def snapshot(cls) -> Dict[str, Any]:
        """Get every setting as currently resolved."""
        return {name: cls.get_int(name) for name in cls.DEFAULTS}
