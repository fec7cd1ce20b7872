"""
Offline baselines: exact dynamic optimum, best fixed list and MTF-based policies.
"""

from .mtfb import (
    derive_mtfb_from_opt,
    fixed_trace,
    greedy_mtfb,
    mtf_list_update,
    mtfb_replay,
    replay_cost,
    singleton_reduction,
    trace_from_opt,
)
from .oracle import (
    MAX_FIXED_N,
    MAX_OPT_N,
    best_fixed_permutation,
    distance_matrix,
    fixed_access_cost,
    opt_dynamic_bruteforce,
    permutation_table,
    switch_to_fixed_cost,
)

__all__ = [
    # Exact oracles
    "opt_dynamic_bruteforce",
    "best_fixed_permutation",
    "fixed_access_cost",
    "switch_to_fixed_cost",
    "permutation_table",
    "distance_matrix",
    "MAX_OPT_N",
    "MAX_FIXED_N",
    # MTF-based policies
    "mtfb_replay",
    "mtf_list_update",
    "greedy_mtfb",
    "singleton_reduction",
    "derive_mtfb_from_opt",
    # Trace helpers
    "fixed_trace",
    "trace_from_opt",
    "replay_cost",
]
