"""
Run orchestration for each subcommand.

The runners own the stage clock: DLM and OFF are advanced step by step here
(or in the auditor), never inside the algorithms themselves.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path

from ..adversary import PhaseConfig, lb_offline_strategy, random_instance, run_phases
from ..core.instance import Instance, dump_instance, load_instance
from ..dlm import AlgState, learning_cost, simulate
from ..exceptions import AuditRequiresBaselineError, BadConfigError
from ..models.reports import AuditReport, LowerBoundReport, OracleRow, SimulationSummary
from ..models.traces import OfflineTrace, StepReport, TraceRow
from ..offline import (
    best_fixed_permutation,
    derive_mtfb_from_opt,
    fixed_access_cost,
    fixed_trace,
    greedy_mtfb,
    mtfb_replay,
    opt_dynamic_bruteforce,
    replay_cost,
    switch_to_fixed_cost,
    trace_from_opt,
)
from ..potentials import PairState, PotentialParams, audit_instance, total_potential
from ..settings import get_settings
from .config import MTF_BASED_BASELINES, ExperimentConfig
from .output import alg_rows, off_rows

logger = logging.getLogger(__name__)

# warn when the exact DP has more transitions than this
OPT_TRANSITION_WARNING = 10**6


def _ratio(numerator: int, denominator: int) -> float | None:
    if denominator <= 0:
        return None
    return round(numerator / denominator, 6)


def _strict(config: ExperimentConfig) -> bool:
    if config.check_invariants is not None:
        return config.check_invariants
    return get_settings().check_invariants


def resolve_instance(config: ExperimentConfig, index: int = 0) -> Instance:
    """The configured instance file, or generated instance number `index`."""
    if config.instance is not None:
        return load_instance(config.instance)
    return random_instance(
        config.n,
        config.r,
        config.m,
        distribution=config.distribution,
        seed=config.seed + index,
        s=config.zipf_s,
        initial=config.initial,
    )


def load_choices(path: Path) -> list[int]:
    """
    Read an MTF choice list: a JSON array with one element id per step.

    Raises:
        BadConfigError: If the file is unreadable or not a list of integers
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise BadConfigError(f"{path}: cannot read choices ({e})") from e
    except json.JSONDecodeError as e:
        raise BadConfigError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}") from e
    if not isinstance(data, list) or not all(isinstance(z, int) and not isinstance(z, bool) for z in data):
        raise BadConfigError(f"{path}: choices must be a JSON list of element ids")
    return data


def build_baseline(config: ExperimentConfig, instance: Instance) -> OfflineTrace:
    """
    Offline trace for the configured baseline.

    Raises:
        BadConfigError: For lb_strategy, which only exists inside lowerbound runs
    """
    baseline = config.baseline
    if baseline == "opt":
        return trace_from_opt(instance, opt_dynamic_bruteforce(instance))
    if baseline == "best_fixed":
        sigma, _ = best_fixed_permutation(instance)
        return fixed_trace(instance, sigma)
    if baseline == "mtfb_from_opt":
        return derive_mtfb_from_opt(instance, opt_dynamic_bruteforce(instance))
    if baseline == "mtfb_choices":
        if config.choices is None:
            return greedy_mtfb(instance)
        return mtfb_replay(instance, load_choices(config.choices))
    raise BadConfigError(f"baseline {baseline!r} is only available for lowerbound runs")


@dataclass
class SimulationResult:
    summary: SimulationSummary
    reports: list[StepReport]
    rows: list[TraceRow] = field(default_factory=list)


def run_simulate(config: ExperimentConfig, index: int = 0) -> SimulationResult:
    """Run the configured online algorithm, plus the baseline if one is selected."""
    instance = resolve_instance(config, index)
    reports, state = simulate(instance, config.algorithm, c=config.c, strict=_strict(config))
    rows = alg_rows(reports)
    total = sum(rep.cost for rep in reports)
    summary = SimulationSummary(
        algorithm=state.describe(),
        n=instance.n,
        r=instance.r,
        m=instance.m,
        access=sum(rep.access for rep in reports),
        reorder=sum(rep.reorder for rep in reports),
        total=total,
        fetches=sum(rep.fetched_count for rep in reports),
        cascade_bound_ok=all(rep.cascade_within_n for rep in reports),
    )
    if config.baseline is not None:
        trace = build_baseline(config, instance)
        rows.extend(off_rows(trace))
        summary.baseline = trace.policy
        summary.baseline_total = trace.total
        summary.ratio = _ratio(total, trace.total)
    return SimulationResult(summary=summary, reports=reports, rows=rows)


def run_audit(config: ExperimentConfig, index: int = 0) -> AuditReport:
    """
    Audit DLM against an MTF-based or fixed baseline.

    Raises:
        AuditRequiresBaselineError: If no auditable baseline is selected
        BadConfigError: If the algorithm is not plain DLM
    """
    if config.baseline not in MTF_BASED_BASELINES:
        raise AuditRequiresBaselineError(
            f"audit needs one of {list(MTF_BASED_BASELINES)} as baseline, got {config.baseline!r}"
        )
    if config.algorithm != "dlm":
        raise BadConfigError(f"audit covers algorithm dlm only, got {config.algorithm}")
    instance = resolve_instance(config, index)
    trace = build_baseline(config, instance)
    report = audit_instance(instance, trace, keep_passing=config.keep_passing)
    if not report.summary.passed:
        logger.error(
            f"audit failed first at step {report.summary.first_failure_step} "
            f"({report.summary.first_failure_stage})"
        )
    return report


def run_oracle(config: ExperimentConfig, index: int = 0) -> OracleRow:
    """
    Compare DLM with OPT, OFF*, the best fixed list and the initial list.

    Raises:
        OracleTooLargeError: If the instance is beyond the exact oracles
    """
    instance = resolve_instance(config, index)
    transitions = instance.m * factorial(instance.n) ** 2
    if transitions > OPT_TRANSITION_WARNING:
        logger.warning(f"exact OPT will scan {transitions} transitions (n={instance.n}, m={instance.m})")

    reports, _ = simulate(instance, "dlm", strict=_strict(config))
    dlm = sum(rep.cost for rep in reports)
    dlm_learning = learning_cost(reports)
    opt = opt_dynamic_bruteforce(instance)
    off_star = derive_mtfb_from_opt(instance, opt)
    sigma, best = best_fixed_permutation(instance)
    initial_fixed = fixed_access_cost(instance, instance.initial)

    params = PotentialParams.for_r(instance.r)
    phi0, psi0 = total_potential(PairState(AlgState(instance.initial), sigma), params)
    static_potential = phi0 + psi0

    chain_ok = (
        opt.cost <= switch_to_fixed_cost(instance, sigma)
        and opt.cost <= initial_fixed
        and best <= initial_fixed
        and replay_cost(instance, opt.orders) == opt.cost
    )
    if not chain_ok:
        logger.error(f"oracle chain broken on instance {index}: OPT={opt.cost}, best fixed={best}")

    return OracleRow(
        index=index,
        seed=None if config.instance is not None else config.seed + index,
        n=instance.n,
        r=instance.r,
        m=instance.m,
        dlm=dlm,
        dlm_learning=dlm_learning,
        opt=opt.cost,
        opt_times_four=4 * opt.cost,
        off_star=off_star.total,
        best_fixed=best,
        initial_fixed=initial_fixed,
        static_potential=static_potential,
        ratio_opt=_ratio(dlm, opt.cost),
        ratio_best_fixed=_ratio(dlm, best),
        learning_ratio=_ratio(dlm_learning, best),
        off_star_ratio=_ratio(off_star.total, opt.cost),
        off_star_within_four_opt=off_star.total <= 4 * opt.cost,
        static_bound_ok=dlm <= params.stage1_coefficient * best + static_potential,
        oracle_chain_ok=chain_ok,
    )


def run_lowerbound(config: ExperimentConfig) -> LowerBoundReport:
    """
    Play the adaptive adversary against DLM_c and the matching offline play.

    Raises:
        RequiresRAtLeast2Error: If r < 2
        ScheduleMismatchError: If the offline play cannot follow the schedule
    """
    phase_config = PhaseConfig(r=config.r, c=config.c, phases=config.phases)
    run = run_phases(phase_config, strict=_strict(config))
    play = lb_offline_strategy(phase_config, run.tails, run.instance)

    bound = 3 * phase_config.c + 3 * phase_config.r
    target = Fraction(phase_config.r**2, 3)
    alg_total = 0
    off_total = 0
    crossing = None
    for record, off_cost in zip(run.records, play.phase_costs):
        record.off_cost = off_cost
        record.off_bound_ok = off_cost <= bound
        alg_total += record.alg_cost
        off_total += off_cost
        if crossing is None and Fraction(alg_total, off_total + play.setup_cost) >= target:
            crossing = record.phase

    report = LowerBoundReport(
        r=phase_config.r,
        c=phase_config.c,
        n=phase_config.n,
        phases=phase_config.phases,
        alg_cost=alg_total,
        off_cost=off_total,
        setup_cost=play.setup_cost,
        target_ratio=target,
        ratio=Fraction(alg_total, off_total),
        ratio_with_setup=Fraction(alg_total, off_total + play.setup_cost),
        crossing_phase=crossing,
        records=run.records,
    )
    if report.ratio < target:
        logger.warning(f"lower-bound ratio {report.ratio} is below r^2/3 = {target}")
    logger.info(
        f"lower bound r={report.r} c={report.c}: DLM_c {alg_total}, OFF {off_total} "
        f"+ setup {play.setup_cost}, ratio {float(report.ratio):.3f}"
    )
    return report


def run_gen(config: ExperimentConfig) -> Instance:
    """Generate one instance from the configured generator parameters."""
    return random_instance(
        config.n,
        config.r,
        config.m,
        distribution=config.distribution,
        seed=config.seed,
        s=config.zipf_s,
        initial=config.initial,
    )


def write_instance(instance: Instance, out: Path) -> Path:
    path = dump_instance(instance, out / "instance.json")
    logger.info(f"Wrote {path}")
    return path
