"""
Request generators: the adaptive lower-bound adversary and seeded random instances.
"""

from .generators import Distribution, InitialList, element_weights, random_instance
from .lower_bound import (
    AdaptiveAdversary,
    OfflinePlay,
    PhaseConfig,
    PhaseRun,
    lb_offline_strategy,
    parked_elements,
    partition_blocks,
    run_phases,
)

__all__ = [
    # Lower-bound construction
    "PhaseConfig",
    "AdaptiveAdversary",
    "PhaseRun",
    "OfflinePlay",
    "run_phases",
    "lb_offline_strategy",
    "partition_blocks",
    "parked_elements",
    # Random instances
    "Distribution",
    "InitialList",
    "element_weights",
    "random_instance",
]
