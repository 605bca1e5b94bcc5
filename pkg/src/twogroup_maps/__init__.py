"""Finite 2-groups with a cyclic or dihedral maximal subgroup, their
automorphism groups, and the arc-transitive maps they define."""

from .catalog import Family, FamilyDescriptor, GroupInstance, build, catalog_all, feature_flags
from .errors import GroupError, KindMismatchError, MalformedElementError, ParameterError, ScaleError

__all__ = [
    "Family",
    "FamilyDescriptor",
    "GroupInstance",
    "GroupError",
    "KindMismatchError",
    "MalformedElementError",
    "ParameterError",
    "ScaleError",
    "build",
    "catalog_all",
    "feature_flags",
]
