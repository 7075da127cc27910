"""Structure of weight modules: primary parts, radical and socle, classification."""
from .classify import DecompositionReport, Summand, classify
from .homs import (
    ProjectiveEntry,
    SimpleCensus,
    canonical_epi,
    hom_space,
    is_homomorphism,
    is_split_epi,
    predicted_tensor,
    projectives_report,
    simple_census,
)
from .structure import (
    PrimaryComponent,
    SeriesReport,
    Submodule,
    coset_blocks,
    is_indecomposable,
    is_simple,
    primary_decomposition,
    radical,
    radical_operator,
    series,
    socle,
    weight_spaces,
)

list_simples = simple_census

__all__ = [
    "DecompositionReport", "PrimaryComponent", "ProjectiveEntry", "SeriesReport", "SimpleCensus",
    "Submodule", "Summand", "canonical_epi", "classify", "coset_blocks", "hom_space",
    "is_homomorphism", "is_indecomposable", "is_simple", "is_split_epi", "list_simples",
    "predicted_tensor", "primary_decomposition", "projectives_report", "radical",
    "radical_operator", "series", "simple_census", "socle", "weight_spaces",
]
