"""Exact polynomial algebra and verification of Chow ring presentations for BG2, BSpin7 and friends."""

from .polyring import GF, QQ, ZZ, CoefficientRing, Polynomial, PolynomialRing, ZZ_localized, parse_polynomial
from .presentations import (
    GradedRingPresentation,
    NotInIdeal,
    RingElement,
    additive_basis,
    completeness_check_g2,
    ideal_membership,
    load_presentation_catalog,
    normal_form,
)
from .chern import WeightSystem, character_of, lambda_pm_character, load_weight_catalog, total_chern
from .maps import MapNotVerified, RingMap, apply, derive_constants, pushforward_multiply, verify_map
from .invariants import GroupAction, degree_doubling_check, dickson_invariants, invariant_space, verify_invariant_ring
from .report import VerificationReport
from .verifier import run_all

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "ZZ", "ZZ_localized", "CoefficientRing", "Polynomial", "PolynomialRing", "parse_polynomial",
    "GradedRingPresentation", "NotInIdeal", "RingElement", "additive_basis", "completeness_check_g2",
    "ideal_membership", "load_presentation_catalog", "normal_form",
    "WeightSystem", "character_of", "lambda_pm_character", "load_weight_catalog", "total_chern",
    "MapNotVerified", "RingMap", "apply", "derive_constants", "pushforward_multiply", "verify_map",
    "GroupAction", "degree_doubling_check", "dickson_invariants", "invariant_space", "verify_invariant_ring",
    "VerificationReport", "run_all",
]
