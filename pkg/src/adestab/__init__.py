"""Exact lattice and central-charge computations for crepant resolutions of
ADE surface singularities."""
from __future__ import annotations

from .charge import (
    ChargeParams,
    ChargeValue,
    certify_negative_definite,
    certify_negative_definite_X,
    charge,
    charge_X,
    compare_phase,
    find_beta,
    q_form,
    q_form_X,
    support_constants,
    validate_params,
)
from .exceptional import (
    decompose,
    normalize_walk,
    phase_chain_check,
    simple_classes,
    skyscraper_filtration,
)
from .lattice import (
    NumClass,
    PushedClass,
    SurfaceSpec,
    discriminant,
    discriminant_X,
    lift,
    pr_kernel,
    pushforward,
    validate_surface,
)
from .root_data import AdeType, build_ade, cartan_select, fundamental_cycle, inverse_negativity_check
from .scanner import Box, Interval, enumerate_candidates, scan_walls

__all__ = [
    "AdeType", "Box", "ChargeParams", "ChargeValue", "Interval", "NumClass", "PushedClass",
    "SurfaceSpec", "build_ade", "cartan_select", "certify_negative_definite",
    "certify_negative_definite_X", "charge", "charge_X", "compare_phase", "decompose",
    "discriminant", "discriminant_X", "enumerate_candidates", "find_beta", "fundamental_cycle",
    "inverse_negativity_check", "lift", "normalize_walk", "phase_chain_check", "pr_kernel",
    "pushforward", "q_form", "q_form_X", "scan_walls", "simple_classes", "skyscraper_filtration",
    "support_constants", "validate_params", "validate_surface",
]
