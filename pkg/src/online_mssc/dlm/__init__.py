"""
The online algorithm: deterministic lazy move-to-front and its variants.
"""

from .algorithm import (
    AlgState,
    Budget,
    DivisorMode,
    ServeHooks,
    fetch,
    learning_cost,
    new_state,
    qualifying_elements,
    serve,
    simulate,
)

__all__ = [
    # State
    "AlgState",
    "Budget",
    "DivisorMode",
    "ServeHooks",
    # Step operations
    "fetch",
    "qualifying_elements",
    "serve",
    # Runners
    "new_state",
    "simulate",
    "learning_cost",
]
