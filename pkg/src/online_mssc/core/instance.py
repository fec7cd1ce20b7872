"""
Requests, instances and the MSSC cost model.

A step charges the access cost min_{z in R} pi(z) against the list in effect
before the step, and then the inversion distance of whatever reordering
follows.
"""

import json
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import ValidationError

from ..exceptions import EmptyRequestError, InstanceFormatError, UnknownElementError
from ..models.instance import InstanceFile
from .permutation import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Request:
    """A requested set of distinct element ids."""

    elements: frozenset[int]

    def __post_init__(self) -> None:
        if not self.elements:
            raise EmptyRequestError("a request must contain at least one element")

    @classmethod
    def of(cls, ids: Iterable[int]) -> "Request":
        """Build a request, rejecting repeated ids."""
        ids = list(ids)
        elements = frozenset(ids)
        if len(elements) != len(ids):
            raise InstanceFormatError(f"request {ids} repeats an element")
        return cls(elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, z: object) -> bool:
        return z in self.elements

    def __len__(self) -> int:
        return len(self.elements)


@dataclass
class Instance:
    """Initial list, request sequence and cardinality bound r."""

    initial: Permutation
    requests: list[Request] = field(default_factory=list)
    r: int = 1

    def __post_init__(self) -> None:
        if self.r < 1:
            raise InstanceFormatError(f"r must be positive, got {self.r}")
        n = self.initial.n
        for idx, request in enumerate(self.requests):
            if request.size > self.r:
                raise InstanceFormatError(
                    f"request {idx} has {request.size} elements, more than r={self.r}"
                )
            for z in request:
                if not 0 <= z < n:
                    raise UnknownElementError(
                        f"request {idx} names element {z}, universe is 0..{n - 1}"
                    )

    @property
    def n(self) -> int:
        return self.initial.n

    @property
    def m(self) -> int:
        return len(self.requests)

    def access_costs(self, permutation: Permutation) -> int:
        """Total access cost of keeping `permutation` fixed for the whole input."""
        return sum(access_cost(permutation, request) for request in self.requests)

    @classmethod
    def build(
        cls, initial_order: Iterable[int], requests: Iterable[Iterable[int]], r: int
    ) -> "Instance":
        """Convenience constructor from plain lists."""
        return cls(
            initial=Permutation.from_order(initial_order),
            requests=[Request.of(ids) for ids in requests],
            r=r,
        )


def access_cost(pi: Permutation, request: Request | Iterable[int]) -> int:
    """
    Position of the requested element nearest the list front.

    Raises:
        EmptyRequestError: If the request has no elements
        UnknownElementError: If an id is outside pi's universe
    """
    ids = request.elements if isinstance(request, Request) else list(request)
    if not ids:
        raise EmptyRequestError("a request must contain at least one element")
    return min(pi.position(z) for z in ids)


def instance_to_file(instance: Instance) -> InstanceFile:
    return InstanceFile(
        n=instance.n,
        r=instance.r,
        initial=instance.initial.order(),
        requests=[request.sorted() for request in instance.requests],
    )


def instance_from_file(data: InstanceFile) -> Instance:
    return Instance.build(data.initial, data.requests, data.r)


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(p) for p in item["loc"]) or "<document>"
        parts.append(f"{loc}: {item['msg']}")
    return "; ".join(parts)


def parse_instance(text: str, source: str = "<string>") -> Instance:
    """
    Parse and validate instance JSON.

    Raises:
        InstanceFormatError: With the JSON line/column or the offending field path
    """
    try:
        data = InstanceFile.model_validate_json(text)
    except ValidationError as e:
        raise InstanceFormatError(f"{source}: {_describe(e)}") from e
    return instance_from_file(data)


def load_instance(path: str | Path) -> Instance:
    """Load an instance file from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceFormatError(f"{path}: cannot read instance ({e})") from e
    instance = parse_instance(text, source=str(path))
    logger.info(f"Loaded instance {path} (n={instance.n}, r={instance.r}, m={instance.m})")
    return instance


def dump_instance(instance: Instance, path: str | Path) -> Path:
    """Write an instance in the standard JSON format."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = instance_to_file(instance).model_dump(mode="json", by_alias=True)
    path.write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")
    return path
