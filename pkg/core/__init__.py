"""
Core Package - André-Quillen cohomology engine

This package contains the exact graded algebra, free CDGAs and their
morphisms, the derivation and Harrison complexes, homotopies and the
function-space computations built on them.
"""

__version__ = "1.0.0"

from .errors import AlgebraError
from .graded_algebra import Element, Generator, Monomial
from .linear_algebra import CohomologySlice, DegreeWindow
from .cdga import DgaMorphism, DgModuleView, FreeCdga, build_cdga, cohomology, tensor_product, trivial_algebra
from .minimal_model import MinimalModel, minimal_model
from .extensions import KahlerModule, SquareZeroExtension, kahler_differentials, square_zero_extension
from .derivation_complex import Derivation, LiePresentation, aq_cohomology_der, gerstenhaber_bracket, h0_lie_algebra
from .homotopy import PolynomialHomotopy, check_homotopy, exp_homotopy, is_homotopic_to_identity
from .harrison import HarrisonCohomology, aq_chain_quotient, aq_cohomology_harrison
from .mapping_spaces import (
    haut_lie_algebra,
    mapping_space_homotopy,
    null_component_formula,
    pi_rational,
    truncation_stability_check,
)
from .presentation import PresentationError, build_algebras, format_presentation, parse_presentation
from .reports import Certification, ResultRecord, emit_report

__all__ = [
    "AlgebraError",
    "Element",
    "Generator",
    "Monomial",
    "CohomologySlice",
    "DegreeWindow",
    "DgaMorphism",
    "DgModuleView",
    "FreeCdga",
    "build_cdga",
    "cohomology",
    "tensor_product",
    "trivial_algebra",
    "MinimalModel",
    "minimal_model",
    "KahlerModule",
    "SquareZeroExtension",
    "kahler_differentials",
    "square_zero_extension",
    "Derivation",
    "LiePresentation",
    "aq_cohomology_der",
    "gerstenhaber_bracket",
    "h0_lie_algebra",
    "PolynomialHomotopy",
    "check_homotopy",
    "exp_homotopy",
    "is_homotopic_to_identity",
    "HarrisonCohomology",
    "aq_chain_quotient",
    "aq_cohomology_harrison",
    "haut_lie_algebra",
    "mapping_space_homotopy",
    "null_component_formula",
    "pi_rational",
    "truncation_stability_check",
    "PresentationError",
    "build_algebras",
    "format_presentation",
    "parse_presentation",
    "Certification",
    "ResultRecord",
    "emit_report",
]

# Core system categories
ALGEBRA_SYSTEMS = [
    "Element",
    "FreeCdga",
    "DgaMorphism",
    "DgModuleView",
    "MinimalModel",
]

COHOMOLOGY_SYSTEMS = [
    "aq_cohomology_der",
    "aq_cohomology_harrison",
    "aq_chain_quotient",
    "h0_lie_algebra",
]

HOMOTOPY_SYSTEMS = [
    "PolynomialHomotopy",
    "exp_homotopy",
    "is_homotopic_to_identity",
    "mapping_space_homotopy",
    "haut_lie_algebra",
]

INTERFACE_SYSTEMS = [
    "parse_presentation",
    "format_presentation",
    "emit_report",
]
