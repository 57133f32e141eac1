# instance.py | fair subset sum instances and their document format
# Copyright (C) 2019-2021  EraserBird, person_v1.32, hmmm

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

from fairsum.data import GenericError, logger
from fairsum.util import dump_json

# Document format:
# {
#     "kind": "separate" | "shared",
#     "c": capacity,
#     "k": agent count (default 2),
#     "items": [[w, ...], ...],  - one list per agent, or a single common list
#     "label": provenance string (optional)
# }
DOCUMENT_FIELDS = {"kind", "c", "k", "items", "label"}


class Kind(Enum):
    SEPARATE = "separate"
    SHARED = "shared"


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class Instance:
    """A fair subset sum instance with integer weights and integer capacity.

    Separate instances hold one weight list per agent, shared instances a
    single common list that every agent may draw from.
    """

    kind: Kind
    capacity: int
    items: Tuple[Tuple[int, ...], ...]
    agent_count: int = 2
    label: str = ""

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            raise GenericError(f"unknown instance kind {self.kind!r}", 990)
        if not _is_int(self.capacity) or self.capacity < 1:
            raise GenericError("capacity must be a positive integer", 990)
        if not _is_int(self.agent_count) or self.agent_count < 2:
            raise GenericError("agent count must be an integer >= 2", 991)

        items = tuple(tuple(weights) for weights in self.items)
        object.__setattr__(self, "items", items)

        expected = self.agent_count if self.kind is Kind.SEPARATE else 1
        if len(items) != expected:
            raise GenericError(
                f"{self.kind.value} instance needs {expected} item lists, got {len(items)}",
                990,
            )
        for weights in items:
            for weight in weights:
                if not _is_int(weight):
                    raise GenericError(f"weight {weight!r} is not an integer", 990)
                if weight < 0:
                    raise GenericError(f"negative weight {weight}", 990)
                if weight > self.capacity:
                    raise GenericError(
                        f"weight exceeds capacity ({weight} > {self.capacity})", 990
                    )

    @property
    def weights(self) -> Tuple[int, ...]:
        """Every weight of the instance, list after list."""
        return tuple(weight for weights in self.items for weight in weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def trivial(self) -> bool:
        """True when every item fits at once, so every criterion picks all items."""
        return self.total_weight <= self.capacity

    def agent_items(self, agent: int) -> Tuple[int, ...]:
        """The weights agent `agent` may draw from."""
        if not 0 <= agent < self.agent_count:
            raise GenericError(f"no agent {agent} in a {self.agent_count} agent instance", 991)
        if self.kind is Kind.SHARED:
            return self.items[0]
        return self.items[agent]

    def with_label(self, label: str) -> "Instance":
        return Instance(self.kind, self.capacity, self.items, self.agent_count, label)


def instance_from_dict(document: Dict[str, Any]) -> Instance:
    if not isinstance(document, dict):
        raise GenericError("instance document must be an object", 990)
    unknown = set(document) - DOCUMENT_FIELDS
    if unknown:
        raise GenericError(f"unknown fields {sorted(unknown)}", 990)
    for field in ("kind", "c", "items"):
        if field not in document:
            raise GenericError(f"missing field {field!r}", 990)

    try:
        kind = Kind(document["kind"])
    except ValueError as e:
        raise GenericError(f"unknown instance kind {document['kind']!r}", 990) from e

    items = document["items"]
    if not isinstance(items, list) or not all(isinstance(w, list) for w in items):
        raise GenericError("items must be an array of integer arrays", 990)
    label = document.get("label", "")
    if not isinstance(label, str):
        raise GenericError("label must be a string", 990)

    return Instance(
        kind=kind,
        capacity=document["c"],
        items=items,
        agent_count=document.get("k", 2),
        label=label,
    )


def instance_to_dict(inst: Instance) -> Dict[str, Any]:
    return {
        "kind": inst.kind.value,
        "c": inst.capacity,
        "k": inst.agent_count,
        "items": [list(weights) for weights in inst.items],
        "label": inst.label,
    }


def parse_instance(text: str) -> Instance:
    """Parses a canonical instance document."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise GenericError(f"malformed instance document: {e}", 990) from e
    inst = instance_from_dict(document)
    if inst.trivial:
        logger.info(f"instance {inst.label!r} is trivial: all items fit")
    return inst


def emit_instance(inst: Instance) -> str:
    return dump_json(instance_to_dict(inst))


def alpha_of(inst: Instance) -> Fraction:
    """Largest item weight relative to the capacity."""
    weights = inst.weights
    if not weights:
        raise GenericError("instance has no items", 100)
    return Fraction(max(weights), inst.capacity)


def separate(capacity: int, *lists: Sequence[int], label: str = "") -> Instance:
    """Shorthand for a separate items instance, one list per agent."""
    return Instance(Kind.SEPARATE, capacity, tuple(lists), len(lists), label)


def shared(capacity: int, weights: Sequence[int], agent_count: int = 2, label: str = "") -> Instance:
    """Shorthand for a shared items instance."""
    return Instance(Kind.SHARED, capacity, (tuple(weights),), agent_count, label)
