"""
Per-step trace records shared by the online algorithm and the offline baselines.
"""

from typing import Literal

from pydantic import Field, computed_field

from .base import SCHEMA_VERSION, BaseMsscModel, Rational


class StepReport(BaseMsscModel):
    """What DLM did and paid while serving one request."""

    step: int = Field(default=0, ge=0, description="1-based step index (0 if unset)")
    access: int = Field(ge=1, description="Access cost, pi(x) before the step")
    reorder: int = Field(ge=0, description="Adjacent swaps spent on fetches")
    ell: int = Field(ge=1, description="Position of the cheapest requested element")
    fetched: list[tuple[int, int]] = Field(
        default_factory=list, description="(element, position at fetch) in fetch order"
    )
    budget_increments: list[tuple[int, Rational]] = Field(
        default_factory=list, description="(element, added budget) for this request"
    )
    cascade_iterations: int = Field(
        default=0, ge=0, description="Iterations of the qualifying-element loop"
    )
    cascade_within_n: bool = Field(
        default=True, description="The qualifying-element loop ran at most n times"
    )
    min_reorder: int = Field(
        default=0,
        ge=0,
        description="Inversion distance between the lists before and after the step",
    )
    budgets: list[Rational] = Field(
        default_factory=list, description="Budget of every element after the step (set by simulate)"
    )

    @computed_field
    @property
    def cost(self) -> int:
        return self.access + self.reorder

    @computed_field
    @property
    def fetched_count(self) -> int:
        return len(self.fetched)


class OfflineStep(BaseMsscModel):
    """One step of an offline solution: access, then its own reordering."""

    step: int = Field(ge=1, description="1-based step index")
    access: int = Field(ge=1, description="Access cost on the offline list")
    reorder: int = Field(ge=0, description="Inversion distance of the reordering")
    moved: int | None = Field(
        default=None, description="Element moved to the front (MTF-based policies)"
    )

    @computed_field
    @property
    def cost(self) -> int:
        return self.access + self.reorder


class OfflineTrace(BaseMsscModel):
    """Replayable offline solution with its list after every step."""

    policy: str = Field(description="Name of the offline policy")
    setup_cost: int = Field(default=0, ge=0, description="Reordering before step 1")
    orders: list[list[int]] = Field(
        description="Offline list (ids front first) before step 1 and after each step"
    )
    steps: list[OfflineStep] = Field(default_factory=list)

    @computed_field
    @property
    def total(self) -> int:
        return self.setup_cost + sum(step.cost for step in self.steps)

    @property
    def choices(self) -> list[int | None]:
        return [step.moved for step in self.steps]


class OptResult(BaseMsscModel):
    """Exact dynamic optimum found by the permutation DP."""

    cost: int = Field(ge=0, description="Minimum total cost")
    orders: list[list[int]] = Field(
        description="Optimal lists pi*_0..pi*_m (ids front first)"
    )
    access: list[int] = Field(default_factory=list, description="Access cost per step")
    reorder: list[int] = Field(
        default_factory=list, description="Reordering cost per step"
    )


class TraceRow(BaseMsscModel):
    """One CSV/JSON trace line."""

    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    side: Literal["ALG", "OFF"]
    step: int
    access: int
    reorder: int
    ell: int | None = None
    fetched_count: int = 0
    cumulative: int
    fetched: list[tuple[int, int]] | None = Field(
        default=None, description="(element, position at fetch), ALG rows only"
    )
    budget_increments: list[tuple[int, Rational]] | None = None
    budgets: list[Rational] | None = Field(
        default=None, description="Exact budgets after the step, ALG rows only"
    )
