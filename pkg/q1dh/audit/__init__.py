"""Claim checks for the quasi-one-dimensional hydrogen atom."""

from q1dh.audit.claims import (
    ClaimError,
    NodeResolutionError,
    NodeSpace,
    bbm_claim,
    claim_plan,
    delta_concentration,
    delta_limit,
    energy_limit,
    fourier_consistency,
    node_count,
    orthonormality_momentum,
    orthonormality_position,
    stc_claim_plan,
    stc_fourier_contrast,
    stc_normalization,
    stc_origin,
)
from q1dh.audit.reports import ClaimReport, SuiteSummary

__all__ = [
    "ClaimError",
    "ClaimReport",
    "NodeResolutionError",
    "NodeSpace",
    "SuiteSummary",
    "bbm_claim",
    "claim_plan",
    "delta_concentration",
    "delta_limit",
    "energy_limit",
    "fourier_consistency",
    "node_count",
    "orthonormality_momentum",
    "orthonormality_position",
    "stc_claim_plan",
    "stc_fourier_contrast",
    "stc_normalization",
    "stc_origin",
]
