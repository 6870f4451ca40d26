"""Key polynomials, inductive valuations and p-adic values on simple extensions of Q."""

from .approx import (
    AnalysisReport,
    KeyDegreeReport,
    analyze,
    pseudo_cauchy_family,
    value_adaptive,
    verify_separate,
)
from .errors import ArtifactError
from .exactnum import INF, ValueGroup, group_index, val_min_add
from .keyval import (
    ValuationChain,
    augment,
    chain_invariants,
    chain_value,
    degree_segment_max,
    is_key_sampled,
    is_ml_key_sampled,
    is_strict_key_sampled,
    lift_residual_factor,
    residual_polynomial,
)
from .padic import BranchOracle, hensel_factor, hensel_root, vp
from .polyring import Poly, divided_derivative, euclid_div, parse_poly, phi_expand, resultant
from .residue import FFPoly, FiniteField, ff_factor, ff_is_irreducible

__all__ = [
    "AnalysisReport", "ArtifactError", "BranchOracle", "FFPoly", "FiniteField", "INF",
    "KeyDegreeReport", "Poly", "ValuationChain", "ValueGroup", "analyze", "augment",
    "chain_invariants", "chain_value", "degree_segment_max", "divided_derivative",
    "euclid_div", "ff_factor", "ff_is_irreducible", "group_index", "hensel_factor",
    "hensel_root", "is_key_sampled", "is_ml_key_sampled", "is_strict_key_sampled",
    "lift_residual_factor", "parse_poly", "phi_expand", "pseudo_cauchy_family",
    "residual_polynomial", "resultant", "val_min_add", "value_adaptive", "verify_separate", "vp",
]
