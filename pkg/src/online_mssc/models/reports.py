"""
Report records: audits, oracle comparisons, lower-bound runs and run summaries.
"""

from enum import Enum
from fractions import Fraction
from typing import Literal

from pydantic import Field, computed_field

from .base import SCHEMA_VERSION, BaseMsscModel, Rational

AuditStage = Literal[
    "fetch", "cascade", "stage1", "stage2", "non_negative", "alg_shift", "off_shift"
]


class AuditVerdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class AuditRecord(BaseMsscModel):
    """
    One checked inequality lhs <= bound.

    lhs is the combination the stage's inequality bounds: for "fetch" the
    potential change of the fetched element itself is left out.
    """

    step: int = Field(ge=0, description="1-based step, 0 for the initial state")
    stage: AuditStage
    element: int | None = Field(default=None, description="Fetched or moved element")
    delta_alg: int = Field(default=0, description="DLM cost paid in this check")
    delta_phi: Rational = Field(default=Fraction(0))
    delta_psi: Rational = Field(default=Fraction(0))
    delta_off: int = Field(default=0, description="OFF cost paid in this check")
    lhs: Rational = Field(default=Fraction(0))
    bound: Rational = Field(default=Fraction(0))
    verdict: AuditVerdict = AuditVerdict.PASS

    @property
    def passed(self) -> bool:
        return self.verdict == AuditVerdict.PASS

    def slack_ratio(self) -> Fraction | None:
        """lhs / bound for positive bounds, None otherwise."""
        if self.bound <= 0:
            return None
        return self.lhs / self.bound


class AuditSummary(BaseMsscModel):
    steps: int = Field(ge=0)
    checks: int = Field(ge=0, description="Number of inequalities evaluated")
    failures: int = Field(ge=0)
    first_failure_step: int | None = None
    first_failure_stage: str | None = None
    max_slack_ratio: Rational | None = Field(
        default=None, description="Largest lhs/bound over checks with a positive bound"
    )
    initial_phi: Rational = Field(default=Fraction(0))
    initial_psi: Rational = Field(default=Fraction(0))
    final_phi: Rational = Field(default=Fraction(0))
    final_psi: Rational = Field(default=Fraction(0))
    telescoping_ok: bool = Field(
        default=True,
        description="Stage deltas add up to final minus initial potential",
    )

    @computed_field
    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.telescoping_ok


class AuditReport(BaseMsscModel):
    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    algorithm: str
    baseline: str
    n: int
    r: int
    m: int
    alpha: int
    beta: Rational
    gamma: int
    kappa: int
    stage1_coefficient: int
    stage2_coefficient: Rational
    summary: AuditSummary
    records: list[AuditRecord] = Field(default_factory=list)


class OracleRow(BaseMsscModel):
    """One instance of the oracle comparison table."""

    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    index: int = Field(default=0, ge=0, description="Instance index within a campaign")
    seed: int | None = None
    n: int
    r: int
    m: int
    dlm: int = Field(description="DLM total cost")
    dlm_learning: int = Field(description="DLM access cost only")
    opt: int
    opt_times_four: int
    off_star: int = Field(description="MTF-based offline cost derived from OPT")
    best_fixed: int = Field(description="Access cost of the best fixed list")
    initial_fixed: int = Field(description="Access cost of never leaving pi_0")
    static_potential: Rational = Field(
        description="Phi + Psi of DLM's start against the best fixed list"
    )
    ratio_opt: float | None = None
    ratio_best_fixed: float | None = None
    learning_ratio: float | None = None
    off_star_ratio: float | None = None
    off_star_within_four_opt: bool
    static_bound_ok: bool = Field(
        description="DLM <= stage-1 coefficient * best_fixed + initial potential"
    )
    oracle_chain_ok: bool


class PhaseRecord(BaseMsscModel):
    """DLM_c against the adaptive adversary over one phase."""

    phase: int = Field(ge=1)
    tail: list[int] = Field(description="Last c + r elements of DLM's list at phase start")
    alg_cost: int
    off_cost: int = 0
    budgets_zero: bool
    front_rotated: bool
    others_shifted: bool
    low_budgets_ok: bool = Field(
        description="Tail budgets stay at most n - r + 1 through the first c requests"
    )
    high_budgets_ok: bool = Field(
        description="Tail budgets reach at least n on request c + 1"
    )
    alg_bound_ok: bool = Field(description="alg_cost >= (c + r)(n - r)")
    off_bound_ok: bool = Field(default=True, description="off_cost <= 3c + 3r")

    @property
    def structure_ok(self) -> bool:
        return (
            self.budgets_zero
            and self.front_rotated
            and self.others_shifted
            and self.low_budgets_ok
            and self.high_budgets_ok
        )


class LowerBoundReport(BaseMsscModel):
    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    r: int
    c: int
    n: int
    phases: int
    alg_cost: int
    off_cost: int = Field(description="Offline cost over the phases, setup excluded")
    setup_cost: int
    target_ratio: Rational = Field(description="r^2 / 3")
    ratio: Rational = Field(description="alg_cost / off_cost, setup amortized away")
    ratio_with_setup: Rational
    crossing_phase: int | None = Field(
        default=None,
        description="First phase where the cumulative ratio including setup reaches r^2/3",
    )
    records: list[PhaseRecord] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return (
            self.ratio >= self.target_ratio
            and all(rec.structure_ok for rec in self.records)
            and all(rec.alg_bound_ok and rec.off_bound_ok for rec in self.records)
        )


class SimulationSummary(BaseMsscModel):
    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    algorithm: str
    n: int
    r: int
    m: int
    access: int
    reorder: int
    total: int
    fetches: int
    cascade_bound_ok: bool = Field(
        default=True, description="Every step's qualifying loop ran at most n times"
    )
    baseline: str | None = None
    baseline_total: int | None = None
    ratio: float | None = None
