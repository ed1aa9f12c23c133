"""Skew-gentle algebras, their orbifold dissections, graded curves and derived invariants."""
from .algebra import (AdmissiblePresentation, AlgebraPresentation, PathCombination, Quiver, StructuralError,
                      ValidationReport, admissible_presentation, canonical_form, derived_presentations,
                      validate_gentle, validate_skew_gentle)
from .complexes import BandParameter, ProjectiveComplex, band_complex, d_squared_residue, string_complex
from .corpus import corpus_generate
from .groebner import Certificate, GroebnerBasis, certify_strong_koszul, quadratic_dual
from .invariants import (QPolynomial, cartan_determinant_check, gorenstein_dimension, invariants,
                         saturated_path_oracle, singularity_profile)
from .surface import (OrbifoldDissection, RibbonComplex, algebra_of_dissection, dissection_of, dual_graph,
                      generalised_ribbon_graph, polygon_decomposition, topology)
from .words import GradedCurve, HomotopyWord, Letter, curve_to_word, parse_word, validate_word, word_to_curve

__version__ = "0.1.0"

__all__ = [
    "AdmissiblePresentation", "AlgebraPresentation", "PathCombination", "Quiver", "StructuralError",
    "ValidationReport", "admissible_presentation", "canonical_form", "derived_presentations",
    "validate_gentle", "validate_skew_gentle",
    "BandParameter", "ProjectiveComplex", "band_complex", "d_squared_residue", "string_complex",
    "corpus_generate",
    "Certificate", "GroebnerBasis", "certify_strong_koszul", "quadratic_dual",
    "QPolynomial", "cartan_determinant_check", "gorenstein_dimension", "invariants",
    "saturated_path_oracle", "singularity_profile",
    "OrbifoldDissection", "RibbonComplex", "algebra_of_dissection", "dissection_of", "dual_graph",
    "generalised_ribbon_graph", "polygon_decomposition", "topology",
    "GradedCurve", "HomotopyWord", "Letter", "curve_to_word", "parse_word", "validate_word", "word_to_curve",
]
