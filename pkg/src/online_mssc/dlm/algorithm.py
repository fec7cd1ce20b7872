"""
Deterministic lazy move-to-front (DLM) and its fixed-divisor family DLM_c.

Serving a request R whose cheapest element x sits at position l:

1. pay l for the access and fetch x to the front;
2. add l/d to the budget of every other requested element, where d is |R|
   (DLM), a constant c (DLM_c) or the instance's r;
3. while some element has budget >= position, fetch the deepest such element.

Fetching deepest-first keeps the fetched elements in their previous relative
order at the list front. Budgets are exact fractions; the branch condition
b(z) >= pi(z) is never evaluated in floating point.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm

from ..core.instance import Instance, Request
from ..core.permutation import Permutation, inversion_distance
from ..exceptions import BadConfigError, InvariantViolationError, UnknownElementError
from ..models.traces import StepReport

logger = logging.getLogger(__name__)

Budget = Fraction


class DivisorMode(str, Enum):
    """How the lazy budget increment l/d picks its divisor d."""

    PER_REQUEST = "per_request"
    FIXED = "fixed"
    MAX_CARDINALITY = "max_cardinality"


@dataclass
class ServeHooks:
    """Optional observers called while serve() runs (used by the auditors)."""

    before_fetch: Callable[["AlgState", int, bool], None] | None = None
    after_fetch: Callable[["AlgState", int, int, bool], None] | None = None
    after_increments: Callable[["AlgState"], None] | None = None


class AlgState:
    """
    DLM's list and per-element budgets.

    All budgets start at zero. After every serve() the invariant
    b(z) < pi(z) holds for every element.
    """

    def __init__(
        self,
        initial: Permutation,
        mode: DivisorMode = DivisorMode.PER_REQUEST,
        c: int | None = None,
        r: int | None = None,
        strict: bool = True,
    ):
        """
        Initialize the state.

        Args:
            initial: starting list; copied, never shared
            mode: divisor rule for the budget increment
            c: the constant divisor of DLM_c (FIXED mode only), c >= 1
            r: the instance's cardinality bound (MAX_CARDINALITY mode only)
            strict: assert the budget invariants on every step

        Raises:
            BadConfigError: If the divisor parameters do not fit the mode
        """
        mode = DivisorMode(mode)
        if mode is DivisorMode.FIXED and (c is None or c < 1):
            raise BadConfigError(f"DLM_c needs an integer c >= 1, got {c}")
        if mode is DivisorMode.MAX_CARDINALITY and (r is None or r < 1):
            raise BadConfigError(f"max-cardinality divisor needs r >= 1, got {r}")
        self.pi = initial.copy()
        self.budgets: list[Budget] = [Fraction(0)] * initial.n
        self.mode = mode
        self.c = c
        self.r = r
        self.strict = strict
        # lcm of every divisor used so far; all budget denominators divide it
        self.denominator_lcm = 1

    @property
    def n(self) -> int:
        return self.pi.n

    def budget(self, z: int) -> Budget:
        if not 0 <= z < self.n:
            raise UnknownElementError(f"element {z} is not in 0..{self.n - 1}")
        return self.budgets[z]

    def divisor(self, request: Request) -> int:
        if self.mode is DivisorMode.FIXED:
            return self.c  # type: ignore[return-value]
        if self.mode is DivisorMode.MAX_CARDINALITY:
            return self.r  # type: ignore[return-value]
        return request.size

    @property
    def mid_step_factor(self) -> Fraction:
        """Strict upper bound on b(z)/pi(z) at any point inside serve()."""
        if self.mode is DivisorMode.FIXED:
            return 1 + Fraction(1, self.c)  # type: ignore[arg-type]
        if self.mode is DivisorMode.MAX_CARDINALITY:
            return 1 + Fraction(1, self.r)  # type: ignore[arg-type]
        # increments only happen for |R| >= 2
        return Fraction(3, 2)

    def copy(self) -> "AlgState":
        clone = AlgState.__new__(AlgState)
        clone.pi = self.pi.copy()
        clone.budgets = list(self.budgets)
        clone.mode = self.mode
        clone.c = self.c
        clone.r = self.r
        clone.strict = self.strict
        clone.denominator_lcm = self.denominator_lcm
        return clone

    def describe(self) -> str:
        if self.mode is DivisorMode.FIXED:
            return f"DLM_{self.c}"
        if self.mode is DivisorMode.MAX_CARDINALITY:
            return f"DLM_r(r={self.r})"
        return "DLM"


def fetch(state: AlgState, z: int) -> int:
    """
    Move z to the list front by adjacent swaps and reset its budget.

    Elements that preceded z move back by one with their budgets untouched.

    Returns:
        Number of swaps, i.e. the old position of z minus one
    """
    cost = state.pi.move_to_front_inplace(z)
    state.budgets[z] = Fraction(0)
    return cost


def qualifying_elements(state: AlgState) -> list[int]:
    """Elements with b(z) >= pi(z), deepest first."""
    pos = state.pi._pos
    funded = [z for z, b in enumerate(state.budgets) if b and b >= pos[z]]
    return sorted(funded, key=lambda z: pos[z], reverse=True)


def _check_mid_step(state: AlgState, where: str) -> None:
    factor = state.mid_step_factor
    for z, b in enumerate(state.budgets):
        if b < 0 or b >= factor * state.pi.position(z):
            raise InvariantViolationError(
                f"{where}: b({z}) = {b} breaks 0 <= b < {factor}*pi = "
                f"{factor * state.pi.position(z)}"
            )
        if state.denominator_lcm % b.denominator:
            raise InvariantViolationError(
                f"{where}: b({z}) = {b} has a denominator not dividing "
                f"{state.denominator_lcm}"
            )


def _check_post_step(state: AlgState) -> None:
    for z, b in enumerate(state.budgets):
        if b >= state.pi.position(z):
            raise InvariantViolationError(
                f"after step: b({z}) = {b} >= pi({z}) = {state.pi.position(z)}"
            )


def serve(
    state: AlgState, request: Request, hooks: ServeHooks | None = None
) -> StepReport:
    """
    Serve one request in place and report what was paid.

    Args:
        state: DLM state, mutated
        request: requested set
        hooks: optional observers for the audit layer

    Returns:
        StepReport with access, executed swaps, l, fetches and increments

    Raises:
        UnknownElementError: If the request names an element outside the list
        InvariantViolationError: If strict checking is on and an invariant fails
    """
    pi = state.pi
    before = pi.copy()
    x = min(request, key=pi.position)
    ell = pi.position(x)

    if hooks and hooks.before_fetch:
        hooks.before_fetch(state, x, False)
    reorder = fetch(state, x)
    fetched = [(x, ell)]
    if hooks and hooks.after_fetch:
        hooks.after_fetch(state, x, reorder, False)

    divisor = state.divisor(request)
    delta = Fraction(ell, divisor)
    increments = []
    if request.size > 1:
        state.denominator_lcm = lcm(state.denominator_lcm, divisor)
        for y in sorted(request.elements - {x}):
            state.budgets[y] += delta
            increments.append((y, delta))
    if state.strict:
        _check_mid_step(state, "after budget increments")
    if hooks and hooks.after_increments:
        hooks.after_increments(state)

    iterations = 0
    while True:
        candidates = qualifying_elements(state)
        if not candidates:
            break
        iterations += 1
        if iterations > state.n:
            if state.strict:
                raise InvariantViolationError(
                    f"qualifying loop ran {iterations} times on {state.n} elements"
                )
            if iterations == state.n + 1:
                logger.warning(f"qualifying loop passed {state.n} iterations")
        z = candidates[0]
        pos = pi.position(z)
        if hooks and hooks.before_fetch:
            hooks.before_fetch(state, z, True)
        cost = fetch(state, z)
        reorder += cost
        fetched.append((z, pos))
        logger.debug(f"cascade fetch of {z} from position {pos}")
        if hooks and hooks.after_fetch:
            hooks.after_fetch(state, z, cost, True)
        if state.strict:
            _check_mid_step(state, f"after cascade fetch of {z}")

    if state.strict:
        _check_post_step(state)

    return StepReport(
        access=ell,
        reorder=reorder,
        ell=ell,
        fetched=fetched,
        budget_increments=increments,
        cascade_iterations=iterations,
        cascade_within_n=iterations <= state.n,
        min_reorder=inversion_distance(before, pi),
    )


def new_state(
    initial: Permutation,
    algorithm: str = "dlm",
    c: int | None = None,
    r: int | None = None,
    strict: bool = True,
) -> AlgState:
    """
    Build a state from an algorithm name: "dlm", "dlm_c" or "dlm_r".

    Raises:
        BadConfigError: If the name is unknown or its parameter is missing
    """
    modes = {
        "dlm": DivisorMode.PER_REQUEST,
        "dlm_c": DivisorMode.FIXED,
        "dlm_r": DivisorMode.MAX_CARDINALITY,
    }
    if algorithm not in modes:
        raise BadConfigError(f"unknown algorithm {algorithm!r}, expected {list(modes)}")
    return AlgState(initial, mode=modes[algorithm], c=c, r=r, strict=strict)


def simulate(
    instance: Instance,
    algorithm: str = "dlm",
    c: int | None = None,
    strict: bool = True,
) -> tuple[list[StepReport], AlgState]:
    """
    Run DLM (or a variant) over a whole instance.

    Args:
        instance: initial list and requests
        algorithm: "dlm", "dlm_c" or "dlm_r"
        c: divisor for "dlm_c"
        strict: check the budget invariants on every step

    Returns:
        Step reports numbered from 1, and the final state
    """
    state = new_state(instance.initial, algorithm, c=c, r=instance.r, strict=strict)
    reports = []
    for t, request in enumerate(instance.requests, start=1):
        report = serve(state, request)
        report.step = t
        report.budgets = list(state.budgets)
        reports.append(report)
        logger.debug(
            f"step {t}: access={report.access} reorder={report.reorder} "
            f"fetched={report.fetched_count}"
        )
    logger.info(
        f"{state.describe()} served {instance.m} requests, "
        f"cost {sum(rep.cost for rep in reports)}"
    )
    return reports, state


def learning_cost(reports: list[StepReport]) -> int:
    """Access cost only: the learning scenario where reordering is free."""
    return sum(report.access for report in reports)
