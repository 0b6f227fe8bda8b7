"""Quantum correlation sets with +-1 outcomes."""
from .angles import AngleMatrix, Correlation, from_angles, to_angles
from .behavior import BehaviorTable, FullCorrelator, correlators_from_behavior
from .feasibility import (
    BOUNDARY,
    MEMBER,
    NONMEMBER,
    Cor33Result,
    Cor33Witness,
    cor33_feasibility,
    restart_spread,
)
from .inequalities import (
    TRIPLE_FAMILIES,
    Cor2mResult,
    Residual,
    arcsin_residual,
    cor2m_member,
    lemma1_residuals,
    lemma3_check,
    tlm_residual,
    triple_residual,
)
from .sampling import FAMILIES, Saturation, correlation_from_vectors, find_saturating, sample_quantum

__all__ = [
    "AngleMatrix", "Correlation", "from_angles", "to_angles",
    "BehaviorTable", "FullCorrelator", "correlators_from_behavior",
    "BOUNDARY", "MEMBER", "NONMEMBER", "Cor33Result", "Cor33Witness",
    "cor33_feasibility", "restart_spread",
    "TRIPLE_FAMILIES", "Cor2mResult", "Residual", "arcsin_residual", "cor2m_member",
    "lemma1_residuals", "lemma3_check", "tlm_residual", "triple_residual",
    "FAMILIES", "Saturation", "correlation_from_vectors", "find_saturating", "sample_quantum",
]
