"""
Experiment configuration: one validated record per CLI run.

Values come from a YAML file (``--config run.yaml``) with CLI flags layered on
top. Validation errors surface as BadConfigError.
"""

import logging
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import Field, ValidationError, field_validator, model_validator

from ..exceptions import BadConfigError
from ..models.base import BaseMsscModel

logger = logging.getLogger(__name__)

Command = Literal["simulate", "audit", "oracle", "lowerbound", "gen"]
Algorithm = Literal["dlm", "dlm_c", "dlm_r"]
Baseline = Literal["opt", "best_fixed", "mtfb_from_opt", "mtfb_choices", "lb_strategy"]
OutputFormat = Literal["csv", "json"]

MTF_BASED_BASELINES = ("best_fixed", "mtfb_from_opt", "mtfb_choices")
MAX_SEED = 2**64 - 1


class ExperimentConfig(BaseMsscModel):
    """Parameters of a single run or campaign."""

    command: Command = Field(default="simulate", description="Subcommand to run")

    # Input: an instance file, or generator parameters
    instance: Path | None = Field(default=None, description="Instance JSON file")
    n: int = Field(default=8, ge=1, description="Universe size for generated instances")
    r: int = Field(default=2, ge=1, description="Maximum request size")
    m: int = Field(default=50, ge=0, description="Number of generated requests")
    distribution: Literal["uniform", "zipf"] = "uniform"
    zipf_s: float = Field(default=1.1, gt=0, description="Zipf exponent")
    initial: Literal["identity", "shuffled"] = "identity"
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    count: int = Field(default=1, ge=1, description="Generated instances in a campaign")

    # Algorithms
    algorithm: Algorithm = "dlm"
    c: int | None = Field(default=None, ge=1, description="Divisor of DLM_c")
    baseline: Baseline | None = None
    choices: Path | None = Field(
        default=None, description="JSON list of MTF choices for the mtfb_choices baseline"
    )
    keep_passing: bool = Field(
        default=True, description="Keep passing audit records in single-run reports"
    )
    check_invariants: bool | None = Field(
        default=None, description="Override Settings.check_invariants"
    )

    # Lower bound
    phases: int = Field(default=20, ge=1)

    # Output
    out: Path | None = Field(default=None, description="Output directory")
    format: OutputFormat = "json"

    @field_validator("instance", "choices", "out", mode="before")
    @classmethod
    def expand_path(cls, v: Any) -> Any:
        if v is None or v == "":
            return None
        return Path(v).expanduser()

    @model_validator(mode="after")
    def validate_algorithm(self) -> "ExperimentConfig":
        if self.algorithm == "dlm_c" and self.c is None:
            raise ValueError("algorithm dlm_c needs c")
        if self.command == "lowerbound" and self.c is None:
            raise ValueError("lowerbound needs c")
        if self.instance is None and self.r > self.n and self.command != "lowerbound":
            raise ValueError(f"r={self.r} exceeds n={self.n}")
        return self


def _describe(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in item['loc']) or '<config>'}: {item['msg']}"
        for item in error.errors()
    )


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Read a YAML mapping of ExperimentConfig fields.

    Raises:
        BadConfigError: If the file cannot be read or is not a mapping
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise BadConfigError(f"{path}: cannot read config ({e})") from e
    except yaml.YAMLError as e:
        raise BadConfigError(f"{path}: invalid YAML ({e})") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise BadConfigError(f"{path}: expected a mapping of settings, got {type(data).__name__}")
    logger.debug(f"Loaded config file {path}: {sorted(data)}")
    return data


def build_config(
    overrides: dict[str, Any], config_file: str | Path | None = None
) -> ExperimentConfig:
    """
    Merge file values with CLI overrides (None means "not given") and validate.

    Raises:
        BadConfigError: On any validation failure
    """
    values = load_config_file(config_file) if config_file else {}
    values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return ExperimentConfig.model_validate(values)
    except ValidationError as e:
        raise BadConfigError(_describe(e)) from e
