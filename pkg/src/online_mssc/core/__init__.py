"""
Permutation algebra, cost model and instance representation.

Shared by the online algorithm, the potential auditors, the offline oracles
and the adversaries.
"""

from .instance import (
    Instance,
    Request,
    access_cost,
    dump_instance,
    instance_from_file,
    instance_to_file,
    load_instance,
    parse_instance,
)
from .permutation import (
    Permutation,
    inversion_distance,
    inversion_distance_bruteforce,
    move_to_front,
    position_decompose,
)

__all__ = [
    # Data types
    "Permutation",
    "Request",
    "Instance",
    # Cost model
    "access_cost",
    "inversion_distance",
    "inversion_distance_bruteforce",
    "move_to_front",
    "position_decompose",
    # Instance files
    "load_instance",
    "dump_instance",
    "parse_instance",
    "instance_to_file",
    "instance_from_file",
]
