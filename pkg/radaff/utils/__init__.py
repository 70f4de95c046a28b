"""Utility modules for radaff."""

from .search_config import SearchConfig

__all__ = ['SearchConfig']
