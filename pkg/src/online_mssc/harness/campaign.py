"""
Campaigns: the same run over many generated instances.

Instance i uses seed + i. Work is spread over a process pool and results are
put back in index order, so the merged output does not depend on scheduling.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from pydantic import Field

from ..exceptions import BadConfigError
from ..models.base import SCHEMA_VERSION, BaseMsscModel, Rational
from ..settings import get_settings
from .config import ExperimentConfig
from .runner import run_audit, run_oracle, run_simulate

logger = logging.getLogger(__name__)


class AuditCampaignRow(BaseMsscModel):
    """Summary line for one audited instance."""

    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    index: int
    seed: int
    n: int
    r: int
    m: int
    baseline: str
    checks: int
    failures: int
    first_failure_step: int | None = None
    max_slack_ratio: Rational | None = None
    telescoping_ok: bool
    passed: bool


class SimulateCampaignRow(BaseMsscModel):
    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    index: int
    seed: int
    n: int
    r: int
    m: int
    algorithm: str
    total: int
    cascade_bound_ok: bool = True
    baseline_total: int | None = None
    ratio: float | None = None


def _run_one(payload: tuple[str, dict[str, Any], int]) -> BaseMsscModel:
    """Worker entry point; takes plain data so it pickles across processes."""
    command, config_data, index = payload
    config = ExperimentConfig.model_validate(config_data)
    seed = config.seed + index
    if command == "oracle":
        return run_oracle(config, index)
    if command == "audit":
        report = run_audit(config.model_copy(update={"keep_passing": False}), index)
        summary = report.summary
        return AuditCampaignRow(
            index=index,
            seed=seed,
            n=report.n,
            r=report.r,
            m=report.m,
            baseline=report.baseline,
            checks=summary.checks,
            failures=summary.failures,
            first_failure_step=summary.first_failure_step,
            max_slack_ratio=summary.max_slack_ratio,
            telescoping_ok=summary.telescoping_ok,
            passed=summary.passed,
        )
    if command == "simulate":
        result = run_simulate(config, index)
        return SimulateCampaignRow(
            index=index,
            seed=seed,
            n=result.summary.n,
            r=result.summary.r,
            m=result.summary.m,
            algorithm=result.summary.algorithm,
            total=result.summary.total,
            cascade_bound_ok=result.summary.cascade_bound_ok,
            baseline_total=result.summary.baseline_total,
            ratio=result.summary.ratio,
        )
    raise BadConfigError(f"command {command!r} does not run as a campaign")


def campaign(
    config: ExperimentConfig, count: int | None = None, workers: int | None = None
) -> list[BaseMsscModel]:
    """
    Run config.command over `count` generated instances.

    Args:
        config: run configuration; config.instance must be unset
        count: number of instances (config.count by default)
        workers: pool size (Settings.workers by default); 1 runs inline

    Returns:
        One row per instance, ordered by index

    Raises:
        BadConfigError: If an instance file is configured or the command is not batchable
    """
    if config.instance is not None:
        raise BadConfigError("campaigns generate their instances; drop the instance file")
    count = count if count is not None else config.count
    workers = workers if workers is not None else get_settings().workers
    data = config.model_dump(mode="json")
    payloads = [(config.command, data, index) for index in range(count)]
    logger.info(f"{config.command} campaign: {count} instances on {workers} worker(s)")

    if workers <= 1:
        rows = [_run_one(payload) for payload in payloads]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_one, payloads))
    rows.sort(key=lambda row: row.index)
    return rows
