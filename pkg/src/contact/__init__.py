"""Contact sub-pseudo-Riemannian structures, their connections and curvature."""

from src.contact.connection import (
    ConnectionCoeffs,
    adapted_connection,
    extended_connection,
    horizontal_connection,
    is_K_contact,
    reeb_coefficients_match,
    tau_endomorphism,
)
from src.contact.curvature import (
    CurvatureMap,
    annihilated_bivectors,
    curvature_of_bivector,
    dtheta_inverse,
    frame_bivector,
    pair_dtheta,
    reeb_curvature,
    schouten_curvature,
    wagner_endomorphism,
)
from src.contact.structure import ContactStructure, FrameStructure, projections, reeb_field

__all__ = [
    "ConnectionCoeffs",
    "ContactStructure",
    "CurvatureMap",
    "FrameStructure",
    "adapted_connection",
    "annihilated_bivectors",
    "curvature_of_bivector",
    "dtheta_inverse",
    "extended_connection",
    "frame_bivector",
    "horizontal_connection",
    "is_K_contact",
    "pair_dtheta",
    "projections",
    "reeb_coefficients_match",
    "reeb_curvature",
    "reeb_field",
    "schouten_curvature",
    "tau_endomorphism",
    "wagner_endomorphism",
]
