"""
On-disk schema of an MSSC instance.

    {"n": int, "r": int, "initial": [element id by position 1..n],
     "requests": [[ids], ...]}

An optional "schema" key is accepted and written back as 1.
"""

from pydantic import ConfigDict, Field, field_validator, model_validator

from .base import SCHEMA_VERSION, BaseMsscModel


class InstanceFile(BaseMsscModel):
    """Validated contents of an instance JSON file."""

    schema_version: int = Field(
        default=SCHEMA_VERSION, alias="schema", description="File format version"
    )
    n: int = Field(ge=1, description="Universe size")
    r: int = Field(ge=1, description="Maximum request cardinality")
    initial: list[int] = Field(description="Element ids by position, front first")
    requests: list[list[int]] = Field(
        default_factory=list, description="Requested sets in arrival order"
    )

    model_config = ConfigDict(populate_by_name=True)

    @field_validator("requests")
    @classmethod
    def validate_request_shape(cls, v: list[list[int]]) -> list[list[int]]:
        for idx, request in enumerate(v):
            if not request:
                raise ValueError(f"request {idx} is empty")
            if len(set(request)) != len(request):
                raise ValueError(f"request {idx} repeats an element: {request}")
        return v

    @model_validator(mode="after")
    def validate_universe(self) -> "InstanceFile":
        if sorted(self.initial) != list(range(self.n)):
            raise ValueError(
                f"initial must list every element 0..{self.n - 1} exactly once"
            )
        for idx, request in enumerate(self.requests):
            unknown = [z for z in request if not 0 <= z < self.n]
            if unknown:
                raise ValueError(f"request {idx} names unknown elements {unknown}")
            if len(request) > self.r:
                raise ValueError(
                    f"request {idx} has {len(request)} elements, more than r={self.r}"
                )
        return self
