"""
Adaptive adversary forcing DLM_c into a ratio of order r^2.

With n = r^2 + c*r elements, a phase is c + 1 requests, each made of the last
r elements on DLM_c's current list. Starting from zero budgets, DLM_c fetches
the c + 1 elements that pass position n - r + 1, then the budgets of the
remaining r - 1 tail elements cross their positions and they are fetched too.
The c + r tail elements end up at the front, rotated, with all budgets zero,
and everything else moved back by c + r.

The matching offline play parks a fixed set A* at its list front once and
then needs one cheap fetch per phase.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from pydantic import Field, computed_field, model_validator

from ..core.instance import Instance, Request, access_cost
from ..core.permutation import Permutation, inversion_distance
from ..dlm.algorithm import AlgState, new_state, serve
from ..exceptions import DomainMismatchError, RequiresRAtLeast2Error, ScheduleMismatchError
from ..models.base import BaseMsscModel
from ..models.reports import PhaseRecord
from ..models.traces import OfflineStep, OfflineTrace, StepReport

logger = logging.getLogger(__name__)


class PhaseConfig(BaseMsscModel):
    """Parameters of a lower-bound run against DLM_c."""

    r: int = Field(ge=1, description="Request size, at least 2")
    c: int = Field(ge=1, description="DLM_c's fixed budget divisor")
    phases: int = Field(default=20, ge=1, description="Number of phases to play")

    @model_validator(mode="after")
    def validate_r(self) -> "PhaseConfig":
        if self.r < 2:
            raise RequiresRAtLeast2Error(
                f"the lower-bound construction needs r >= 2, got r={self.r}"
            )
        return self

    @computed_field
    @property
    def n(self) -> int:
        return self.r * self.r + self.c * self.r

    @property
    def block(self) -> int:
        """Size c + r of every tail set."""
        return self.c + self.r

    @property
    def requests_per_phase(self) -> int:
        return self.c + 1


class AdaptiveAdversary:
    """Emits the last r elements of the list it is shown, c + 1 times per phase."""

    def __init__(self, config: PhaseConfig):
        self.config = config
        self.phase = 1
        self.position_in_phase = 0
        self.emitted: list[Request] = []

    def next_request(self, current: Permutation) -> Request:
        """
        Request the elements at positions n - r + 1..n of current.

        Raises:
            DomainMismatchError: If current is not over n elements
        """
        n, r = self.config.n, self.config.r
        if current.n != n:
            raise DomainMismatchError(
                f"adversary for n={n} was shown a list of {current.n} elements"
            )
        request = Request(frozenset(current.element_at(pos) for pos in range(n - r + 1, n + 1)))
        self.emitted.append(request)
        self.position_in_phase += 1
        if self.position_in_phase == self.config.requests_per_phase:
            self.position_in_phase = 0
            self.phase += 1
        return request


@dataclass
class PhaseRun:
    """Everything recorded while DLM_c played against the adversary."""

    config: PhaseConfig
    instance: Instance
    tails: list[list[int]] = field(default_factory=list)
    records: list[PhaseRecord] = field(default_factory=list)
    reports: list[StepReport] = field(default_factory=list)

    @property
    def alg_cost(self) -> int:
        return sum(rec.alg_cost for rec in self.records)


def _play_phase(
    state: AlgState, adversary: AdaptiveAdversary, phase: int
) -> tuple[PhaseRecord, list[int], list[StepReport]]:
    config = adversary.config
    n, r, c = config.n, config.r, config.c
    start_order = state.pi.order()
    start_positions = state.pi.positions()
    tail = start_order[-config.block :]
    low = tail[c + 1 :]
    zero_at_start = all(b == 0 for b in state.budgets)

    reports = []
    low_ok = True
    high_ok = True
    for k in range(1, config.requests_per_phase + 1):
        request = adversary.next_request(state.pi)
        before_budgets = list(state.budgets)
        report = serve(state, request)
        reports.append(report)
        if k <= c:
            low_ok &= all(state.budgets[b] <= n - r + 1 for b in low)
        else:
            reached = dict.fromkeys(low, Fraction(0))
            for b in low:
                reached[b] = before_budgets[b]
            for z, delta in report.budget_increments:
                if z in reached:
                    reached[z] += delta
            high_ok &= all(value >= n for value in reached.values())

    end_order = state.pi.order()
    end_positions = state.pi.positions()
    in_tail = set(tail)
    alg_cost = sum(rep.cost for rep in reports)
    record = PhaseRecord(
        phase=phase,
        tail=tail,
        alg_cost=alg_cost,
        budgets_zero=zero_at_start and all(b == 0 for b in state.budgets),
        front_rotated=end_order[: config.block] == tail[c + 1 :] + tail[: c + 1],
        others_shifted=all(
            end_positions[z] == start_positions[z] + config.block
            for z in range(n)
            if z not in in_tail
        ),
        low_budgets_ok=low_ok,
        high_budgets_ok=high_ok,
        alg_bound_ok=alg_cost >= config.block * (n - r),
    )
    return record, tail, reports


def run_phases(config: PhaseConfig, strict: bool = True) -> PhaseRun:
    """
    Play config.phases phases of the adversary against DLM_c from the identity list.

    Returns:
        The recorded static instance, the tail set of every phase and one
        PhaseRecord per phase with the structure checks filled in
    """
    initial = Permutation.identity(config.n)
    state = new_state(initial, "dlm_c", c=config.c, strict=strict)
    adversary = AdaptiveAdversary(config)
    run = PhaseRun(config=config, instance=Instance(initial=initial, r=config.r))
    for phase in range(1, config.phases + 1):
        record, tail, reports = _play_phase(state, adversary, phase)
        for report in reports:
            report.step = len(run.reports) + 1
            run.reports.append(report)
        run.records.append(record)
        run.tails.append(tail)
        if not record.structure_ok:
            logger.warning(f"phase {phase} broke the expected phase structure: {record}")
    run.instance = Instance(initial=initial, requests=list(adversary.emitted), r=config.r)
    logger.info(
        f"DLM_{config.c} against the adversary (r={config.r}, n={config.n}): "
        f"{config.phases} phases, cost {run.alg_cost}"
    )
    return run


def partition_blocks(config: PhaseConfig, initial: Permutation) -> list[list[int]]:
    """A_1..A_r: the initial list's tail blocks of size c + r, last block first."""
    order = initial.order()
    size = config.block
    return [order[len(order) - (i + 1) * size : len(order) - i * size] for i in range(config.r)]


def parked_elements(config: PhaseConfig, blocks: list[list[int]]) -> list[int]:
    """
    A*: ceil((c + r) / (r - 1)) elements of each block, in block order.

    Consecutive picks are at most r - 1 apart, also cyclically from the last
    pick around to the first. A block comes back to the tail rotated, so its
    last r - 1 positions are always a cyclic window of the block and hold a
    parked element.
    """
    step = config.r - 1
    parked = []
    for block in blocks:
        size = len(block)
        count = -(-size // step)
        parked.extend(block[-(-(k * size) // count) - 1] for k in range(1, count + 1))
    return parked


@dataclass
class OfflinePlay:
    """The cheap offline answer to a recorded adversarial run."""

    trace: OfflineTrace
    setup_cost: int
    phase_costs: list[int]
    parked: list[int]

    @property
    def off_cost(self) -> int:
        return sum(self.phase_costs)


def _pick_fetch(
    config: PhaseConfig, phase: int, tail: list[int], parked: set[int], off: Permutation
) -> int:
    window = tail[-(config.r - 1) :]
    candidates = [z for z in window if z in parked]
    if not candidates:
        raise ScheduleMismatchError(
            f"phase {phase}: no parked element among the last {config.r - 1} "
            f"positions {window} (r={config.r}, c={config.c})"
        )
    return min(candidates, key=off.position)


def lb_offline_strategy(
    config: PhaseConfig, tails: list[list[int]], instance: Instance
) -> OfflinePlay:
    """
    Offline play against a recorded schedule.

    Moves A* to the list front once (keeping its order), then before every
    phase fetches the parked element that sits among the last r - 1
    positions of DLM_c's list; that element is in every request of the phase.

    Args:
        config: lower-bound parameters
        tails: DLM_c's last c + r elements at the start of each phase
        instance: the recorded requests, c + 1 per phase

    Raises:
        ScheduleMismatchError: If a phase's tail set is not the expected block,
            or no parked element sits in the part of the tail every request hits
    """
    per_phase = config.requests_per_phase
    if len(instance.requests) != per_phase * len(tails):
        raise ScheduleMismatchError(
            f"{len(instance.requests)} requests do not make {len(tails)} phases of {per_phase}"
        )
    blocks = partition_blocks(config, instance.initial)
    for phase, tail in enumerate(tails, start=1):
        expected = blocks[(phase - 1) % config.r]
        if set(tail) != set(expected):
            raise ScheduleMismatchError(
                f"phase {phase}: tail set {sorted(tail)} is not block {sorted(expected)}"
            )
    parked = parked_elements(config, blocks)
    parked_set = set(parked)
    initial_order = instance.initial.order()
    arranged = [z for z in initial_order if z in parked_set] + [
        z for z in initial_order if z not in parked_set
    ]
    off = Permutation.from_order(arranged)
    arrange_cost = inversion_distance(instance.initial, off)

    fetch_costs = []
    first = _pick_fetch(config, 1, tails[0], parked_set, off)
    fetch_costs.append(off.move_to_front_inplace(first))

    orders = [off.order()]
    steps = []
    phase_access = [0] * len(tails)
    for idx, request in enumerate(instance.requests):
        phase_idx, k = divmod(idx, per_phase)
        access = access_cost(off, request)
        phase_access[phase_idx] += access
        moved = None
        reorder = 0
        if k == per_phase - 1 and phase_idx + 1 < len(tails):
            moved = _pick_fetch(config, phase_idx + 2, tails[phase_idx + 1], parked_set, off)
            reorder = off.move_to_front_inplace(moved)
            fetch_costs.append(reorder)
        steps.append(OfflineStep(step=idx + 1, access=access, reorder=reorder, moved=moved))
        orders.append(off.order())

    trace = OfflineTrace(
        policy="lb_strategy",
        setup_cost=arrange_cost + fetch_costs[0],
        orders=orders,
        steps=steps,
    )
    phase_costs = [phase_access[i] + fetch_costs[i] for i in range(len(tails))]
    return OfflinePlay(
        trace=trace, setup_cost=arrange_cost, phase_costs=phase_costs, parked=parked
    )
