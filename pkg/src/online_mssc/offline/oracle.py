"""
Exact offline baselines by enumeration over all n! lists.

The dynamic optimum is a DP over list states: with W_m = 0,

    W_{t-1}[tau] = access(tau, R_t) + min_sigma (d(tau, sigma) + W_t[sigma])

and OPT = W_0[pi_0]. The n! x n! inversion-distance matrix is built once per
n and shared. Lists are enumerated in lexicographic order of their element
sequence, so taking the first minimizer everywhere yields the
lexicographically smallest optimal sequence.
"""

import logging
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from ..core.instance import Instance, access_cost
from ..core.permutation import Permutation, inversion_distance
from ..exceptions import OracleTooLargeError
from ..models.traces import OptResult

logger = logging.getLogger(__name__)

MAX_OPT_N = 7
MAX_FIXED_N = 8
# rows of the distance matrix processed per numpy block
_BLOCK_ROWS = 512


@lru_cache(maxsize=None)
def permutation_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """
    All lists over n elements in lexicographic order.

    Returns:
        (orders, positions): orders[k] is the k-th list front first and
        positions[k, z] is the 1-based position of z in it
    """
    if n > MAX_FIXED_N:
        raise OracleTooLargeError(f"refusing to enumerate {n}! lists (limit n <= {MAX_FIXED_N})")
    orders = np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)
    positions = (np.argsort(orders, axis=1) + 1).astype(np.int16)
    orders.setflags(write=False)
    positions.setflags(write=False)
    return orders, positions


@lru_cache(maxsize=None)
def distance_matrix(n: int) -> np.ndarray:
    """Inversion distance between every pair of lists of permutation_table(n)."""
    if n > MAX_OPT_N:
        raise OracleTooLargeError(
            f"distance matrix over {n}! lists is too large (limit n <= {MAX_OPT_N})"
        )
    _, positions = permutation_table(n)
    count = positions.shape[0]
    dist = np.zeros((count, count), dtype=np.uint8)
    for x, y in combinations(range(n), 2):
        x_first = positions[:, x] < positions[:, y]
        dist += x_first[:, None] != x_first[None, :]
    dist.setflags(write=False)
    logger.debug(f"built {count}x{count} distance matrix for n={n}")
    return dist


def _index_of(pi: Permutation) -> int:
    """Lexicographic rank of pi's element sequence (Lehmer code)."""
    order = pi.order()
    n = len(order)
    rank = 0
    remaining = sorted(order)
    factorial = [1] * (n + 1)
    for i in range(1, n + 1):
        factorial[i] = factorial[i - 1] * i
    for i, z in enumerate(order):
        k = remaining.index(z)
        rank += k * factorial[n - 1 - i]
        remaining.pop(k)
    return rank


def _access_vectors(instance: Instance, positions: np.ndarray) -> list[np.ndarray]:
    return [positions[:, request.sorted()].min(axis=1).astype(np.int64) for request in instance.requests]


def _row_minimum(dist: np.ndarray, values: np.ndarray) -> np.ndarray:
    """min over sigma of dist[tau, sigma] + values[sigma], for every tau."""
    count = dist.shape[0]
    best = np.empty(count, dtype=np.int64)
    for start in range(0, count, _BLOCK_ROWS):
        block = dist[start : start + _BLOCK_ROWS].astype(np.int64) + values[None, :]
        best[start : start + _BLOCK_ROWS] = block.min(axis=1)
    return best


def opt_dynamic_bruteforce(instance: Instance) -> OptResult:
    """
    Exact minimum cost over all list sequences pi_0, pi_1, ..., pi_m.

    Step t pays access(pi_{t-1}, R_t) and then d(pi_{t-1}, pi_t).

    Raises:
        OracleTooLargeError: If n > 7
    """
    n = instance.n
    if n > MAX_OPT_N:
        raise OracleTooLargeError(f"exact OPT needs n <= {MAX_OPT_N}, got n={n}")
    orders, positions = permutation_table(n)
    start = _index_of(instance.initial)
    if instance.m == 0:
        return OptResult(cost=0, orders=[instance.initial.order()])

    dist = distance_matrix(n)
    access = _access_vectors(instance, positions)
    # future[t] = W_t, the optimal cost of steps t+1..m from each list
    future: list[np.ndarray] = [np.zeros(0)] * (instance.m + 1)
    future[instance.m] = np.zeros(orders.shape[0], dtype=np.int64)
    for t in range(instance.m, 0, -1):
        future[t - 1] = access[t - 1] + _row_minimum(dist, future[t])

    tau = start
    sequence = [instance.initial.order()]
    step_access: list[int] = []
    step_reorder: list[int] = []
    for t in range(1, instance.m + 1):
        step_access.append(int(access[t - 1][tau]))
        candidates = dist[tau].astype(np.int64) + future[t]
        sigma = int(np.argmin(candidates))
        step_reorder.append(int(dist[tau, sigma]))
        sequence.append([int(z) for z in orders[sigma]])
        tau = sigma

    cost = int(future[0][start])
    logger.debug(f"OPT over n={n}, m={instance.m}: {cost}")
    return OptResult(cost=cost, orders=sequence, access=step_access, reorder=step_reorder)


def best_fixed_permutation(instance: Instance) -> tuple[Permutation, int]:
    """
    The fixed list with the smallest total access cost.

    Raises:
        OracleTooLargeError: If n > 8
    """
    n = instance.n
    if n > MAX_FIXED_N:
        raise OracleTooLargeError(f"best fixed list needs n <= {MAX_FIXED_N}, got n={n}")
    orders, positions = permutation_table(n)
    totals = np.zeros(orders.shape[0], dtype=np.int64)
    for vector in _access_vectors(instance, positions):
        totals += vector
    k = int(np.argmin(totals))
    return Permutation.from_order(int(z) for z in orders[k]), int(totals[k])


def fixed_access_cost(instance: Instance, sigma: Permutation) -> int:
    """Total access cost of serving the whole input from the fixed list sigma."""
    return instance.access_costs(sigma)


def switch_to_fixed_cost(instance: Instance, sigma: Permutation) -> int:
    """
    Cost of serving the first request from pi_0, then moving to sigma for good.

    Access is charged before reordering, so this is the cheapest way to end
    up in sigma and an upper bound on OPT. Zero for an empty input.
    """
    if not instance.requests:
        return 0
    first, *rest = instance.requests
    return (
        access_cost(instance.initial, first)
        + inversion_distance(instance.initial, sigma)
        + sum(access_cost(sigma, request) for request in rest)
    )
