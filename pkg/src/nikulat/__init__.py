"""Exact-arithmetic lattice toolkit for Nikulin-type orbifold period lattices."""

from .intmat import smith_normal_form
from .isometry import (
    Isometry,
    OrbitBudget,
    OrbitSet,
    compose,
    identity_isometry,
    is_isometry,
    orbit_explore,
    reflection,
    same_orbit_witness,
)
from .lattice import (
    EmbeddingMap,
    EmbeddingReport,
    Lattice,
    LatticeError,
    LatticeVector,
    SublatticeReport,
    check_embedding,
    direct_sum,
    discriminant_group,
    divisibility,
    is_primitive,
    pair,
    rescale,
    saturate,
    square,
    standard_lattice,
)
from .model import (
    EnumerationWindow,
    FibrationType,
    NamedModel,
    NamedVectors,
    OrbitClass,
    StarBreakdown,
    VectorProfile,
    build_model,
    classify_isotropic_type,
    classify_orbit,
    default_generator_names,
    default_generators,
    enumerate_primitive_isotropic,
    eta,
    eta_embedding,
    minus_two_vectors,
    sigma_star,
    star_condition,
    vector_profile,
)
from .audit import MtCoefficients, mt_coefficients, run_all, run_claim
from .exprs import ExpressionError, format_vector, parse_vector

__version__ = "0.1.0"

__all__ = [
    "EmbeddingMap",
    "EmbeddingReport",
    "EnumerationWindow",
    "ExpressionError",
    "FibrationType",
    "Isometry",
    "Lattice",
    "LatticeError",
    "LatticeVector",
    "MtCoefficients",
    "NamedModel",
    "NamedVectors",
    "OrbitBudget",
    "OrbitClass",
    "OrbitSet",
    "StarBreakdown",
    "SublatticeReport",
    "VectorProfile",
    "build_model",
    "check_embedding",
    "classify_isotropic_type",
    "classify_orbit",
    "compose",
    "default_generator_names",
    "default_generators",
    "direct_sum",
    "discriminant_group",
    "divisibility",
    "enumerate_primitive_isotropic",
    "eta",
    "eta_embedding",
    "format_vector",
    "identity_isometry",
    "is_isometry",
    "is_primitive",
    "minus_two_vectors",
    "mt_coefficients",
    "orbit_explore",
    "pair",
    "parse_vector",
    "reflection",
    "rescale",
    "run_all",
    "run_claim",
    "same_orbit_witness",
    "saturate",
    "sigma_star",
    "smith_normal_form",
    "square",
    "standard_lattice",
    "vector_profile",
]
