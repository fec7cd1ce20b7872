"""
MTF-based offline policies.

An MTF-based policy serves each request and then moves exactly one requested
element to the front of its list, nothing else. Every policy here produces an
OfflineTrace that the auditors can replay.
"""

import logging
from collections.abc import Sequence

from ..core.instance import Instance, Request, access_cost
from ..core.permutation import Permutation, inversion_distance
from ..exceptions import IllegalChoiceError, InstanceFormatError, TraceMismatchError
from ..models.traces import OfflineStep, OfflineTrace, OptResult

logger = logging.getLogger(__name__)


def mtfb_replay(
    instance: Instance,
    choices: Sequence[int],
    policy: str = "mtfb_choices",
) -> OfflineTrace:
    """
    Replay one move-to-front choice per step, starting from instance.initial.

    Args:
        instance: the input
        choices: element moved to the front after serving each request
        policy: name recorded in the trace

    Returns:
        Trace with access charged before the move and reorder = pi*(choice) - 1

    Raises:
        IllegalChoiceError: If a choice is not in its step's request or the
            number of choices does not match the number of requests
    """
    if len(choices) != instance.m:
        raise IllegalChoiceError(
            f"{policy}: {len(choices)} choices for {instance.m} requests"
        )
    off = instance.initial.copy()
    orders = [off.order()]
    steps = []
    for t, (request, choice) in enumerate(zip(instance.requests, choices), start=1):
        if choice not in request:
            raise IllegalChoiceError(
                f"{policy}: step {t} moves {choice}, not in request {request.sorted()}"
            )
        access = access_cost(off, request)
        cost = off.move_to_front_inplace(choice)
        steps.append(OfflineStep(step=t, access=access, reorder=cost, moved=choice))
        orders.append(off.order())
    return OfflineTrace(policy=policy, orders=orders, steps=steps)


def mtf_list_update(instance: Instance) -> OfflineTrace:
    """
    Move-to-front on a list-update instance (every request a singleton).

    Raises:
        InstanceFormatError: If some request has more than one element
    """
    choices = []
    for t, request in enumerate(instance.requests, start=1):
        if request.size != 1:
            raise InstanceFormatError(
                f"move-to-front list update needs singleton requests, step {t} has {request.size}"
            )
        (only,) = request.elements
        choices.append(only)
    return mtfb_replay(instance, choices, policy="mtf")


def greedy_mtfb(instance: Instance) -> OfflineTrace:
    """MTF-based policy that always moves the requested element nearest its front."""
    off = instance.initial.copy()
    choices = []
    for request in instance.requests:
        choice = min(request, key=off.position)
        off.move_to_front_inplace(choice)
        choices.append(choice)
    return mtfb_replay(instance, choices, policy="mtfb_greedy")


def _check_opt(instance: Instance, opt: OptResult) -> list[Permutation]:
    if len(opt.orders) != instance.m + 1:
        raise TraceMismatchError(
            f"OPT trace has {len(opt.orders)} lists, instance needs {instance.m + 1}"
        )
    lists = [Permutation.from_order(order) for order in opt.orders]
    if lists[0] != instance.initial:
        raise TraceMismatchError(
            f"OPT trace starts at {opt.orders[0]}, instance at {instance.initial.order()}"
        )
    return lists


def singleton_reduction(instance: Instance, opt: OptResult) -> Instance:
    """
    List-update instance J: step t requests only the element of R_t that OPT
    keeps nearest its front when serving step t.

    Raises:
        TraceMismatchError: If opt does not belong to instance
    """
    lists = _check_opt(instance, opt)
    reduced = []
    for t, request in enumerate(instance.requests):
        served_from = lists[t]
        reduced.append(Request(frozenset({min(request, key=served_from.position)})))
    return Instance(initial=instance.initial.copy(), requests=reduced, r=1)


def derive_mtfb_from_opt(instance: Instance, opt: OptResult) -> OfflineTrace:
    """
    MTF-based policy OFF* built from an optimal trace.

    Runs move-to-front on the singleton reduction and replays its moves on
    the original instance; OFF* costs at most four times OPT.

    Raises:
        TraceMismatchError: If opt does not belong to instance
    """
    reduced = singleton_reduction(instance, opt)
    mtf = mtf_list_update(reduced)
    trace = mtfb_replay(instance, [step.moved for step in mtf.steps], policy="mtfb_from_opt")
    logger.debug(
        f"OFF* cost {trace.total}, MTF on reduction {mtf.total}, OPT {opt.cost}"
    )
    return trace


def fixed_trace(instance: Instance, sigma: Permutation, policy: str = "best_fixed") -> OfflineTrace:
    """Trace of an OFF that starts in sigma free of charge and never reorders."""
    steps = [
        OfflineStep(step=t, access=access_cost(sigma, request), reorder=0)
        for t, request in enumerate(instance.requests, start=1)
    ]
    order = sigma.order()
    return OfflineTrace(policy=policy, orders=[order] * (instance.m + 1), steps=steps)


def trace_from_opt(instance: Instance, opt: OptResult) -> OfflineTrace:
    """OptResult as an OfflineTrace; moves are general reorderings, not MTF."""
    _check_opt(instance, opt)
    steps = [
        OfflineStep(step=t, access=access, reorder=reorder)
        for t, (access, reorder) in enumerate(zip(opt.access, opt.reorder), start=1)
    ]
    return OfflineTrace(policy="opt", orders=opt.orders, steps=steps)


def replay_cost(instance: Instance, orders: Sequence[Sequence[int]]) -> int:
    """
    Recompute a list sequence's cost through the core cost model.

    Raises:
        TraceMismatchError: If the sequence length does not match the instance
    """
    if len(orders) != instance.m + 1:
        raise TraceMismatchError(f"{len(orders)} lists for {instance.m} requests")
    lists = [Permutation.from_order(order) for order in orders]
    total = 0
    for t, request in enumerate(instance.requests):
        total += access_cost(lists[t], request)
        total += inversion_distance(lists[t], lists[t + 1])
    return total
