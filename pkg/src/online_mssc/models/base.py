"""
Base models and serialization helpers for online MSSC records.

Every trace, report and configuration record derives from BaseMsscModel so
that JSON output is produced the same way everywhere. Exact rationals are
written as "num/den" strings and never pass through floating point.
"""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator

SCHEMA_VERSION = 1


def format_fraction(value: Fraction) -> str:
    """Render a rational as "num/den" (denominator always shown)."""
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(value: Any) -> Fraction:
    """Accept Fractions, ints and "num/den" strings; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    raise ValueError(f"expected an exact rational, got {type(value).__name__}")


Rational = Annotated[
    Fraction,
    PlainValidator(parse_fraction),
    PlainSerializer(format_fraction, return_type=str),
]


class BaseMsscModel(BaseModel):
    """
    Base model for all online MSSC data structures.

    Provides consistent validation and JSON serialization for traces,
    reports and experiment configuration.
    """

    model_config = ConfigDict(
        # Enable validation on assignment
        validate_assignment=True,
        # Use enum values instead of names in serialization
        use_enum_values=True,
        extra="ignore",
        validate_default=True,
        # Permutation objects travel inside some records
        arbitrary_types_allowed=True,
    )

    def model_dump_report(self) -> dict[str, Any]:
        """Serialize for report files: JSON-safe, None fields dropped."""
        return self.model_dump(mode="json", exclude_none=True, by_alias=True)
