"""Centralizers, z-classes and structural classification of small finite groups."""

from .group import Group, SubgroupSet, from_table

__version__ = "0.1.0"

__all__ = ["Group", "SubgroupSet", "from_table", "__version__"]
