"""Exact tropical convexity: hemispaces, sectors and semispaces.

Max-plus and max-times scalars with exact rational payloads, finitely
generated convex sets through (P, R) generator pairs, sector and
semispace predicates, and structured hemispaces with rank-one
validation, exact membership, complements and halfspace conversion.
"""

from .semiring import Model, TScalar, t_add, t_inv, t_mul
from .tlinalg import PRDecomposition, TVec, cone_member_fg, pr_member, support
from .sectors import SectorId, quasisector_contains, sector_contains, semispace_contains
from .hemispace import (
    AffineHemispace,
    BoundarySet,
    HemispaceSpec,
    affine_member,
    complement_spec,
    conical_member,
    rank_one_check,
)

__all__ = [
    "Model",
    "TScalar",
    "TVec",
    "PRDecomposition",
    "SectorId",
    "BoundarySet",
    "HemispaceSpec",
    "AffineHemispace",
    "t_add",
    "t_mul",
    "t_inv",
    "support",
    "cone_member_fg",
    "pr_member",
    "quasisector_contains",
    "sector_contains",
    "semispace_contains",
    "conical_member",
    "affine_member",
    "complement_spec",
    "rank_one_check",
]
