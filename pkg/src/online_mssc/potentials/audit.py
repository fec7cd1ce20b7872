"""
Mechanical checks of the amortized inequalities, step by step.

A step is split in two stages. In stage 1 both sides pay their access cost
and DLM reorders while OFF's list stays put; in stage 2 OFF reorders and DLM
is idle. Every fetch DLM makes inside stage 1 is checked on its own as well.
"""

import logging
from fractions import Fraction

from ..core.instance import Instance, access_cost
from ..core.permutation import Permutation, move_to_front
from ..dlm.algorithm import AlgState, DivisorMode, ServeHooks, serve
from ..exceptions import DomainMismatchError, TraceMismatchError
from ..models.reports import (
    AuditRecord,
    AuditReport,
    AuditSummary,
    AuditVerdict,
)
from ..models.traces import OfflineTrace, StepReport
from .functions import check_non_negative, is_safe, phi_z, psi_z, total_potential
from .params import PairState, PotentialParams

logger = logging.getLogger(__name__)


def _same_universe(before: PairState, after: PairState) -> None:
    if before.n != after.n:
        raise DomainMismatchError(
            f"audited states have {before.n} and {after.n} elements"
        )


def _deltas(
    before: PairState, after: PairState, params: PotentialParams
) -> tuple[Fraction, Fraction]:
    phi0, psi0 = total_potential(before, params)
    phi1, psi1 = total_potential(after, params)
    return phi1 - phi0, psi1 - psi0


def _verdict(lhs: Fraction, bound: Fraction) -> AuditVerdict:
    return AuditVerdict.PASS if lhs <= bound else AuditVerdict.FAIL


def audit_fetch(
    before: PairState,
    after: PairState,
    z: int,
    fetch_cost: int,
    params: PotentialParams,
    step: int = 0,
) -> AuditRecord:
    """
    Check fetch_cost + dPsi + sum over w != z of dPhi_w <= 2 * pi_before(z).

    Raises:
        DomainMismatchError: If the two states differ in size
    """
    _same_universe(before, after)
    d_phi_all, d_psi = _deltas(before, after, params)
    d_phi_z = phi_z(after, params, z) - phi_z(before, params, z)
    d_phi_others = d_phi_all - d_phi_z
    lhs = fetch_cost + d_psi + d_phi_others
    bound = Fraction(2 * before.alg.pi.position(z))
    return AuditRecord(
        step=step,
        stage="fetch",
        element=z,
        delta_alg=fetch_cost,
        delta_phi=d_phi_others,
        delta_psi=d_psi,
        lhs=lhs,
        bound=bound,
        verdict=_verdict(lhs, bound),
    )


def audit_cascade(
    before: PairState,
    after: PairState,
    z: int,
    fetch_cost: int,
    params: PotentialParams,
    step: int = 0,
) -> AuditRecord:
    """
    Check that a fetch of an over-funded element pays for itself.

    z had b(z) >= pi(z) before the fetch, so fetch_cost + dPhi + dPsi <= 0.
    """
    _same_universe(before, after)
    d_phi, d_psi = _deltas(before, after, params)
    lhs = fetch_cost + d_phi + d_psi
    return AuditRecord(
        step=step,
        stage="cascade",
        element=z,
        delta_alg=fetch_cost,
        delta_phi=d_phi,
        delta_psi=d_psi,
        lhs=lhs,
        bound=Fraction(0),
        verdict=_verdict(lhs, Fraction(0)),
    )


def audit_stage1(
    before: PairState,
    after: PairState,
    alg_step: StepReport,
    off_access: int,
    params: PotentialParams,
    step: int = 0,
) -> AuditRecord:
    """
    Check dDLM + dPhi + dPsi <= (3 + alpha) * 2^(kappa + 1) * off_access.

    Args:
        before: pair state at the start of the step
        after: pair state after DLM served the request, OFF unchanged
        alg_step: DLM's report for the step
        off_access: OFF's access cost on the same request
        params: potential constants
        step: step index for the record

    Raises:
        DomainMismatchError: If the two states differ in size
    """
    _same_universe(before, after)
    d_phi, d_psi = _deltas(before, after, params)
    lhs = alg_step.cost + d_phi + d_psi
    bound = Fraction(params.stage1_coefficient * off_access)
    return AuditRecord(
        step=step,
        stage="stage1",
        delta_alg=alg_step.cost,
        delta_phi=d_phi,
        delta_psi=d_psi,
        delta_off=off_access,
        lhs=lhs,
        bound=bound,
        verdict=_verdict(lhs, bound),
    )


def audit_stage2(
    before: PairState,
    after: PairState,
    moved: int | None,
    params: PotentialParams,
    step: int = 0,
) -> AuditRecord:
    """
    Check dPhi + dPsi <= beta * 2^(kappa + 3) * (pi*(moved) - 1).

    moved=None stands for an OFF that does not reorder; the bound is then 0.
    """
    _same_universe(before, after)
    d_phi, d_psi = _deltas(before, after, params)
    off_cost = 0 if moved is None else before.off.position(moved) - 1
    lhs = d_phi + d_psi
    bound = params.stage2_coefficient * off_cost
    return AuditRecord(
        step=step,
        stage="stage2",
        element=moved,
        delta_phi=d_phi,
        delta_psi=d_psi,
        delta_off=off_cost,
        lhs=lhs,
        bound=bound,
        verdict=_verdict(lhs, bound),
    )


def _element_deltas(
    before: PairState, after: PairState, params: PotentialParams, w: int
) -> tuple[Fraction, Fraction]:
    return (
        phi_z(after, params, w) - phi_z(before, params, w),
        psi_z(after, params, w) - psi_z(before, params, w),
    )


def alg_shift_failures(
    before: PairState,
    after: PairState,
    z: int,
    params: PotentialParams,
    step: int = 0,
) -> list[AuditRecord]:
    """
    Elements pushed back one place by DLM's fetch of z whose potential grew too much.

    A safe element may not gain any Phi_w + Psi_w; any other gains at most
    3 * beta. Only violations produce records.
    """
    _same_universe(before, after)
    failures = []
    for pos in range(1, before.alg.pi.position(z)):
        w = before.alg.pi.element_at(pos)
        d_phi, d_psi = _element_deltas(before, after, params, w)
        bound = Fraction(0) if is_safe(before, params, w) else 3 * params.beta
        if d_phi + d_psi > bound:
            failures.append(
                AuditRecord(
                    step=step,
                    stage="alg_shift",
                    element=w,
                    delta_phi=d_phi,
                    delta_psi=d_psi,
                    lhs=d_phi + d_psi,
                    bound=bound,
                    verdict=AuditVerdict.FAIL,
                )
            )
    return failures


def off_shift_failures(
    before: PairState,
    after: PairState,
    moved: int | None,
    params: PotentialParams,
    step: int = 0,
) -> list[AuditRecord]:
    """
    Elements pushed back one place on OFF's list whose Phi_w or Psi_w grew.

    Both must stay put or drop; only violations produce records.
    """
    _same_universe(before, after)
    if moved is None:
        return []
    failures = []
    for pos in range(1, before.off.position(moved)):
        w = before.off.element_at(pos)
        d_phi, d_psi = _element_deltas(before, after, params, w)
        if d_phi > 0 or d_psi > 0:
            failures.append(
                AuditRecord(
                    step=step,
                    stage="off_shift",
                    element=w,
                    delta_phi=d_phi,
                    delta_psi=d_psi,
                    lhs=max(d_phi, d_psi),
                    verdict=AuditVerdict.FAIL,
                )
            )
    return failures


def summarize(
    records: list[AuditRecord],
    steps: int,
    initial: tuple[Fraction, Fraction],
    final: tuple[Fraction, Fraction],
) -> AuditSummary:
    """
    Fold audit records into a summary.

    The telescoping check adds up stage-1 and stage-2 potential changes and
    compares them with final minus initial potential; fetch and cascade
    records are sub-steps of stage 1 and are not counted twice.
    """
    failures = [rec for rec in records if not rec.passed]
    ratios = [ratio for rec in records if (ratio := rec.slack_ratio()) is not None]
    stage_delta = sum(
        (rec.delta_phi + rec.delta_psi for rec in records if rec.stage in ("stage1", "stage2")),
        Fraction(0),
    )
    expected = (final[0] + final[1]) - (initial[0] + initial[1])
    return AuditSummary(
        steps=steps,
        checks=len(records),
        failures=len(failures),
        first_failure_step=failures[0].step if failures else None,
        first_failure_stage=failures[0].stage if failures else None,
        max_slack_ratio=max(ratios) if ratios else None,
        initial_phi=initial[0],
        initial_psi=initial[1],
        final_phi=final[0],
        final_psi=final[1],
        telescoping_ok=stage_delta == expected,
    )


class _FetchAuditor:
    """ServeHooks target that audits every fetch DLM makes during one step."""

    def __init__(self, off: Permutation, params: PotentialParams, step: int):
        self.off = off
        self.params = params
        self.step = step
        self.records: list[AuditRecord] = []
        self._before: PairState | None = None

    def _checkpoint(self, state: AlgState) -> None:
        pair = PairState(state, self.off)
        bad = check_non_negative(pair, self.params)
        if bad is not None:
            self.records.append(
                AuditRecord(
                    step=self.step,
                    stage="non_negative",
                    element=bad,
                    lhs=-(phi_z(pair, self.params, bad) + psi_z(pair, self.params, bad)),
                    verdict=AuditVerdict.FAIL,
                )
            )

    def before_fetch(self, state: AlgState, z: int, in_cascade: bool) -> None:
        self._before = PairState(state.copy(), self.off)

    def after_fetch(self, state: AlgState, z: int, cost: int, in_cascade: bool) -> None:
        before = self._before
        after = PairState(state, self.off)
        self.records.append(
            audit_fetch(before, after, z, cost, self.params, step=self.step)
        )
        self.records.extend(
            alg_shift_failures(before, after, z, self.params, step=self.step)
        )
        if in_cascade:
            self.records.append(
                audit_cascade(before, after, z, cost, self.params, step=self.step)
            )
        self._checkpoint(state)

    def after_increments(self, state: AlgState) -> None:
        self._checkpoint(state)

    def hooks(self) -> ServeHooks:
        return ServeHooks(
            before_fetch=self.before_fetch,
            after_fetch=self.after_fetch,
            after_increments=self.after_increments,
        )


def _next_off(trace: OfflineTrace, t: int, off: Permutation) -> tuple[Permutation, int | None]:
    """OFF's list after step t, checked against the recorded move."""
    target = Permutation.from_order(trace.orders[t])
    moved = trace.steps[t - 1].moved
    if moved is None:
        expected = off
    else:
        expected, _ = move_to_front(off, moved)
    if expected != target:
        raise TraceMismatchError(
            f"{trace.policy}: step {t} does not reach the recorded list "
            f"{trace.orders[t]} by moving {moved} to the front"
        )
    return target, moved


def audit_instance(
    instance: Instance,
    trace: OfflineTrace,
    params: PotentialParams | None = None,
    keep_passing: bool = True,
) -> AuditReport:
    """
    Replay DLM against an offline trace and audit every stage of every step.

    Args:
        instance: the input
        trace: an MTF-based or fixed offline trace over the same instance
        params: potential constants, for_r(instance.r) by default
        keep_passing: keep PASS records in the report (failures are always kept)

    Raises:
        TraceMismatchError: If the trace does not fit the instance or is not MTF-based
    """
    params = params or PotentialParams.for_r(instance.r)
    if len(trace.orders) != instance.m + 1 or len(trace.steps) != instance.m:
        raise TraceMismatchError(
            f"{trace.policy}: trace covers {len(trace.steps)} steps, instance has {instance.m}"
        )
    off = Permutation.from_order(trace.orders[0])
    if off.n != instance.n:
        raise TraceMismatchError(
            f"{trace.policy}: trace lists have {off.n} elements, instance has {instance.n}"
        )
    alg = AlgState(instance.initial, mode=DivisorMode.PER_REQUEST)

    initial = total_potential(PairState(alg, off), params)
    records: list[AuditRecord] = []
    check_count = 0
    failures = 0

    def keep(batch: list[AuditRecord]) -> None:
        nonlocal check_count, failures
        check_count += len(batch)
        for rec in batch:
            if not rec.passed:
                failures += 1
                logger.warning(
                    f"audit FAIL at step {rec.step} ({rec.stage}): "
                    f"{rec.lhs} > {rec.bound}"
                )
            if keep_passing or not rec.passed:
                records.append(rec)

    stage_total = Fraction(0)
    for t, request in enumerate(instance.requests, start=1):
        before = PairState(alg.copy(), off)
        auditor = _FetchAuditor(off, params, t)
        report = serve(alg, request, hooks=auditor.hooks())
        report.step = t
        off_access = access_cost(off, request)
        mid = PairState(alg.copy(), off)
        stage1 = audit_stage1(before, mid, report, off_access, params, step=t)

        new_off, moved = _next_off(trace, t, off)
        if moved is not None and moved not in request:
            raise TraceMismatchError(
                f"{trace.policy}: step {t} moves {moved}, which was not requested"
            )
        after = PairState(alg.copy(), new_off)
        stage2 = audit_stage2(mid, after, moved, params, step=t)
        stage_total += stage1.delta_phi + stage1.delta_psi
        stage_total += stage2.delta_phi + stage2.delta_psi
        shifts = off_shift_failures(mid, after, moved, params, step=t)
        keep(auditor.records + [stage1, stage2] + shifts)
        off = new_off

    final = total_potential(PairState(alg, off), params)
    summary = summarize(records, instance.m, initial, final)
    # records may have been thinned; recount from the running totals
    summary.checks = check_count
    summary.failures = failures
    summary.telescoping_ok = stage_total == (final[0] + final[1]) - (initial[0] + initial[1])
    logger.info(
        f"audit of {trace.policy}: {instance.m} steps, {check_count} checks, "
        f"{failures} failures"
    )
    return AuditReport(
        algorithm="dlm",
        baseline=trace.policy,
        n=instance.n,
        r=instance.r,
        m=instance.m,
        alpha=params.alpha,
        beta=params.beta,
        gamma=params.gamma,
        kappa=params.kappa,
        stage1_coefficient=params.stage1_coefficient,
        stage2_coefficient=params.stage2_coefficient,
        summary=summary,
        records=records,
    )
