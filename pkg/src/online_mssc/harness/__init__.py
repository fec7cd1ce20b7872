"""
Experiment harness: configuration, runners, campaigns, report files and the CLI.
"""

from .campaign import AuditCampaignRow, SimulateCampaignRow, campaign
from .cli import build_parser, execute, run_cli
from .config import ExperimentConfig, build_config, load_config_file
from .output import alg_rows, off_rows, write_csv, write_json, write_rows
from .runner import (
    SimulationResult,
    build_baseline,
    load_choices,
    resolve_instance,
    run_audit,
    run_gen,
    run_lowerbound,
    run_oracle,
    run_simulate,
)

__all__ = [
    # Configuration
    "ExperimentConfig",
    "build_config",
    "load_config_file",
    # Runners
    "SimulationResult",
    "resolve_instance",
    "build_baseline",
    "load_choices",
    "run_simulate",
    "run_audit",
    "run_oracle",
    "run_lowerbound",
    "run_gen",
    # Campaigns
    "campaign",
    "AuditCampaignRow",
    "SimulateCampaignRow",
    # Output
    "alg_rows",
    "off_rows",
    "write_csv",
    "write_json",
    "write_rows",
    # CLI
    "build_parser",
    "execute",
    "run_cli",
]
