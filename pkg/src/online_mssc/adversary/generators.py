"""
Seeded random instances for audit and oracle campaigns.
"""

import logging
from typing import Literal

import numpy as np

from ..core.instance import Instance, Request
from ..core.permutation import Permutation
from ..exceptions import BadConfigError

logger = logging.getLogger(__name__)

Distribution = Literal["uniform", "zipf"]
InitialList = Literal["identity", "shuffled"]


def element_weights(
    initial: Permutation, distribution: Distribution, s: float = 1.1
) -> np.ndarray | None:
    """
    Request probabilities per element id.

    "zipf" gives the element at position i weight proportional to 1/i^s, so
    requests favour the initial list front. "uniform" returns None.
    """
    if distribution == "uniform":
        return None
    if distribution != "zipf":
        raise BadConfigError(f"unknown distribution {distribution!r}")
    ranks = np.array(initial.positions(), dtype=float)
    weights = 1.0 / np.power(ranks, s)
    return weights / weights.sum()


def random_instance(
    n: int,
    r: int,
    m: int,
    distribution: Distribution = "uniform",
    seed: int = 0,
    s: float = 1.1,
    initial: InitialList = "identity",
) -> Instance:
    """
    Draw m independent requests over n elements.

    Each request has size k uniform in 1..r and holds k distinct elements
    drawn by the element weights. All randomness comes from one generator
    seeded with `seed`, so the same arguments give the same instance.

    Raises:
        BadConfigError: If the parameters are out of range
    """
    if n < 1:
        raise BadConfigError(f"n must be positive, got {n}")
    if not 1 <= r <= n:
        raise BadConfigError(f"r must be in 1..n={n}, got {r}")
    if m < 0:
        raise BadConfigError(f"m must be non-negative, got {m}")
    if distribution == "zipf" and s <= 0:
        raise BadConfigError(f"zipf exponent must be positive, got {s}")
    if initial not in ("identity", "shuffled"):
        raise BadConfigError(f"unknown initial list {initial!r}")
    if seed < 0 or seed >= 2**64:
        raise BadConfigError(f"seed must be an unsigned 64-bit integer, got {seed}")

    rng = np.random.default_rng(seed)
    if initial == "shuffled":
        start = Permutation.from_order(int(z) for z in rng.permutation(n))
    else:
        start = Permutation.identity(n)
    weights = element_weights(start, distribution, s)

    requests = []
    for _ in range(m):
        k = int(rng.integers(1, r + 1))
        ids = rng.choice(n, size=k, replace=False, p=weights)
        requests.append(Request(frozenset(int(z) for z in ids)))
    logger.debug(f"generated instance n={n} r={r} m={m} ({distribution}, seed={seed})")
    return Instance(initial=start, requests=requests, r=r)
