"""Exact linear complementarity solving via Lemke's method and symmetric bimatrix games."""

from __future__ import annotations

from .document import InstanceDocument, parse_document, serialize
from .errors import (
    CoveringVectorError,
    DegeneracyError,
    DegenerateDirectionError,
    DimensionError,
    DocumentError,
    LcpError,
    NotEquilibriumError,
    PivotLimitError,
    PositivityError,
    SizeError,
    TrivialInstance,
)
from .lcp import (
    ExtendedInstance,
    ExtendedPoint,
    LcpInstance,
    SecondaryDirection,
    SecondaryRay,
    is_secondary_direction,
    is_secondary_ray,
    is_solution,
    is_vertex,
    primary_ray,
)
from .lemke import LemkeOutcome, Outcome, lemke_solve
from .nash import MixedProfile, SymmetricGame, enumerate_sne, is_sne, symmetrize
from .oracle import enumerate_directions, enumerate_skeleton, enumerate_solutions
from .pipeline import audit_instance, run_pipeline
from .recovery import (
    EquilibriumClassification,
    Tag,
    classify_equilibrium,
    extract_ray_from_point,
    perturb_covering,
    resolve_type1_direction,
)
from .reduction import (
    build_augmented,
    build_game_basic,
    build_game_full,
    compute_beta,
    scale_instance,
)

__all__ = [
    "annotations",
    "audit_instance",
    "build_augmented",
    "build_game_basic",
    "build_game_full",
    "classify_equilibrium",
    "compute_beta",
    "CoveringVectorError",
    "DegeneracyError",
    "DegenerateDirectionError",
    "DimensionError",
    "DocumentError",
    "enumerate_directions",
    "enumerate_skeleton",
    "enumerate_sne",
    "enumerate_solutions",
    "EquilibriumClassification",
    "ExtendedInstance",
    "ExtendedPoint",
    "extract_ray_from_point",
    "InstanceDocument",
    "is_secondary_direction",
    "is_secondary_ray",
    "is_sne",
    "is_solution",
    "is_vertex",
    "LcpError",
    "LcpInstance",
    "lemke_solve",
    "LemkeOutcome",
    "MixedProfile",
    "NotEquilibriumError",
    "Outcome",
    "parse_document",
    "perturb_covering",
    "PivotLimitError",
    "PositivityError",
    "primary_ray",
    "resolve_type1_direction",
    "run_pipeline",
    "scale_instance",
    "SecondaryDirection",
    "SecondaryRay",
    "serialize",
    "SizeError",
    "SymmetricGame",
    "symmetrize",
    "Tag",
    "TrivialInstance",
]
