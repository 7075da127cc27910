"""Hopf-Ore extensions of abelian group algebras and their rank-one quotients."""
from .algebra import (
    HopfElement,
    HopfPresentation,
    Normalization,
    PresentationError,
    QuotientSpec,
    TensorElement,
    case_normalize,
    he_antipode,
    he_comul,
    he_counit,
    he_mul,
    make_hopf,
)
from .axioms import AxiomReport, CheckResult, verify_hopf_axioms
from .primitives import (
    Prediction,
    RankReport,
    predicted_primitives,
    q_closed_form_comul,
    rank_report,
    skew_primitive_space,
)

__all__ = [
    "AxiomReport", "CheckResult", "HopfElement", "HopfPresentation", "Normalization", "Prediction",
    "PresentationError", "QuotientSpec", "RankReport", "TensorElement", "case_normalize", "he_antipode",
    "he_comul", "he_counit", "he_mul", "make_hopf", "predicted_primitives", "q_closed_form_comul",
    "rank_report", "skew_primitive_space", "verify_hopf_axioms",
]
