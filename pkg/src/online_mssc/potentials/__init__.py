"""
Potential functions and per-step auditors for DLM's amortized analysis.
"""

from .audit import (
    alg_shift_failures,
    audit_cascade,
    audit_fetch,
    audit_instance,
    audit_stage1,
    audit_stage2,
    off_shift_failures,
    summarize,
)
from .functions import (
    alg_shift_delta,
    check_non_negative,
    is_safe,
    off_shift_delta,
    phi_value,
    phi_z,
    position_is_safe,
    psi_value,
    psi_z,
    total_potential,
)
from .params import PairState, PotentialParams, ceil_log2

__all__ = [
    # Constants and state
    "PotentialParams",
    "PairState",
    "ceil_log2",
    # Potentials
    "phi_value",
    "psi_value",
    "phi_z",
    "psi_z",
    "total_potential",
    "is_safe",
    "position_is_safe",
    "check_non_negative",
    "alg_shift_delta",
    "off_shift_delta",
    # Auditors
    "audit_fetch",
    "audit_cascade",
    "audit_stage1",
    "audit_stage2",
    "audit_instance",
    "alg_shift_failures",
    "off_shift_failures",
    "summarize",
]
