"""Partition calculus, Latin cubes, diagonal semilattices and diagonal graphs over finite groups."""

from .errors import SizeLimitExceeded, StructureError, ValidationError
from .partitions import Partition, join, meet
from .groups import CayleyTable, Group, Subgroup

__all__ = [
    "CayleyTable",
    "Group",
    "Partition",
    "SizeLimitExceeded",
    "StructureError",
    "Subgroup",
    "ValidationError",
    "join",
    "meet",
]
