"""
Pydantic records shared across the package: instance files, traces and reports.
"""

from .base import SCHEMA_VERSION, BaseMsscModel, Rational, format_fraction, parse_fraction
from .instance import InstanceFile
from .reports import (
    AuditRecord,
    AuditReport,
    AuditSummary,
    AuditVerdict,
    LowerBoundReport,
    OracleRow,
    PhaseRecord,
    SimulationSummary,
)
from .traces import OfflineStep, OfflineTrace, OptResult, StepReport, TraceRow

__all__ = [
    # Base
    "SCHEMA_VERSION",
    "BaseMsscModel",
    "Rational",
    "format_fraction",
    "parse_fraction",
    # Instance files
    "InstanceFile",
    # Traces
    "StepReport",
    "OfflineStep",
    "OfflineTrace",
    "OptResult",
    "TraceRow",
    # Reports
    "AuditVerdict",
    "AuditRecord",
    "AuditSummary",
    "AuditReport",
    "OracleRow",
    "PhaseRecord",
    "LowerBoundReport",
    "SimulationSummary",
]
