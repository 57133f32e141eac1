# frontier.py | pareto frontiers by subset sum dynamic programming
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

import string
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd

from fairsum.data import GenericError, logger
from fairsum.instance import Instance, Kind

UtilityVector = Tuple[int, ...]

SIDE_A = 0
SIDE_B = 1


@dataclass(frozen=True)
class Allocation:
    """One set of item indices per agent.

    Indices refer to the agent's own list for separate instances and to the
    common list for shared instances.
    """

    bundles: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "bundles", tuple(frozenset(bundle) for bundle in self.bundles)
        )

    def utilities(self, inst: Instance) -> UtilityVector:
        return tuple(
            sum(inst.agent_items(agent)[i] for i in bundle)
            for agent, bundle in enumerate(self.bundles)
        )

    def feasible(self, inst: Instance) -> bool:
        if len(self.bundles) != inst.agent_count:
            return False
        for agent, bundle in enumerate(self.bundles):
            if any(not 0 <= i < len(inst.agent_items(agent)) for i in bundle):
                return False
        if inst.kind is Kind.SHARED:
            seen: Set[int] = set()
            for bundle in self.bundles:
                if seen & bundle:
                    return False
                seen |= bundle
        return sum(self.utilities(inst)) <= inst.capacity


@dataclass(frozen=True)
class FrontierEntry:
    """A Pareto efficient utility vector.

    The witness allocation is rebuilt on demand by `reconstruct`.
    """

    utilities: UtilityVector
    instance: Instance = field(compare=False, repr=False)
    trace: Callable[[], Allocation] = field(compare=False, repr=False)

    @property
    def total(self) -> int:
        return sum(self.utilities)


@dataclass(frozen=True)
class ParetoFrontier:
    instance: Instance
    entries: Tuple[FrontierEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[FrontierEntry]:
        return iter(self.entries)

    def utility_set(self) -> Set[UtilityVector]:
        return {entry.utilities for entry in self.entries}

    def to_dataframe(self) -> pd.DataFrame:
        """Frontier table with one utility and one witness column per agent."""
        letters = agent_letters(self.instance.agent_count)
        rows = []
        for entry in self.entries:
            allocation = reconstruct(entry, self.instance)
            row = {f"u{letter}": u for letter, u in zip(letters, entry.utilities)}
            for letter, bundle in zip(letters, allocation.bundles):
                row[f"witness{letter}"] = ";".join(str(i) for i in sorted(bundle))
            rows.append(row)
        columns = [f"u{letter}" for letter in letters] + [
            f"witness{letter}" for letter in letters
        ]
        return pd.DataFrame(rows, columns=columns)

    def to_csv(self) -> str:
        return self.to_dataframe().to_csv(index=False)


def agent_letters(k: int) -> List[str]:
    if k > len(string.ascii_uppercase):
        return [str(j + 1) for j in range(k)]
    return list(string.ascii_uppercase[:k])


@dataclass(frozen=True, eq=False)
class SubsetSumTable:
    """Reachable subset sums of `weights` up to `capacity`.

    pred[s] holds the item that first reached s, so s - weights[pred[s]] was
    reached by a strictly earlier item.
    """

    weights: Tuple[int, ...]
    capacity: int
    reach: np.ndarray
    pred: np.ndarray

    def sums(self) -> List[int]:
        return np.flatnonzero(self.reach).tolist()

    def best(self) -> int:
        return int(np.flatnonzero(self.reach)[-1])

    def witness(self, total: int) -> FrozenSet[int]:
        if not 0 <= total <= self.capacity or not self.reach[total]:
            raise GenericError(f"sum {total} is not reachable", 400)
        items = set()
        while total > 0:
            item = int(self.pred[total])
            items.add(item)
            total -= self.weights[item]
        return frozenset(items)


def subset_sum_table(weights: Sequence[int], capacity: int) -> SubsetSumTable:
    logger.info("building subset sum table")
    weights = tuple(weights)
    if any(w < 0 for w in weights):
        raise GenericError("negative weight", 990)

    reach = np.zeros(capacity + 1, dtype=bool)
    reach[0] = True
    pred = np.full(capacity + 1, -1, dtype=np.int32)
    for item, w in enumerate(weights):
        if w > capacity:
            continue
        shifted = np.zeros_like(reach)
        shifted[w:] = reach[: capacity + 1 - w]
        fresh = shifted & ~reach
        pred[fresh] = item
        reach |= shifted
    return SubsetSumTable(weights, capacity, reach, pred)


def reachable_sums(weights: Sequence[int], capacity: int) -> Set[int]:
    return set(subset_sum_table(weights, capacity).sums())


def _staircase(a_values: np.ndarray, b_values: np.ndarray) -> List[Tuple[int, int]]:
    """Keeps the (a, b) pairs whose b beats every pair with a larger a.

    a_values must be ascending. The result is ascending in a.
    """
    a_desc = a_values[::-1]
    b_desc = b_values[::-1]
    best_so_far = np.concatenate(([-1], np.maximum.accumulate(b_desc)[:-1]))
    keep = b_desc > best_so_far
    return list(zip(a_desc[keep][::-1].tolist(), b_desc[keep][::-1].tolist()))


def _check_two_agents(inst: Instance, kind: Kind):
    if inst.kind is not kind:
        raise GenericError(f"expected a {kind.value} instance, got {inst.kind.value}", 990)
    if inst.agent_count != 2:
        raise GenericError(
            f"the dynamic program handles two agents, got {inst.agent_count}", 991
        )


def _separate_witness(table_a: SubsetSumTable, table_b: SubsetSumTable, a: int, b: int):
    return Allocation((table_a.witness(a), table_b.witness(b)))


def pareto_separate(inst: Instance) -> ParetoFrontier:
    """Pareto frontier of a two agent separate items instance in O(nc)."""
    _check_two_agents(inst, Kind.SEPARATE)
    c = inst.capacity
    table_a = subset_sum_table(inst.items[0], c)
    table_b = subset_sum_table(inst.items[1], c)

    logger.info("extracting separate frontier")
    # best reachable b not above t, for every t
    b_at_most = np.maximum.accumulate(np.where(table_b.reach, np.arange(c + 1), -1))
    a_values = np.flatnonzero(table_a.reach)
    b_values = b_at_most[c - a_values]

    entries = tuple(
        FrontierEntry((a, b), inst, partial(_separate_witness, table_a, table_b, a, b))
        for a, b in _staircase(a_values, b_values)
    )
    return ParetoFrontier(inst, entries)


@dataclass(frozen=True, eq=False)
class SharedTable:
    """Pairs (a, b) reachable by disjoint bundles of one common list."""

    weights: Tuple[int, ...]
    capacity: int
    reach: np.ndarray
    pred_item: np.ndarray
    pred_side: np.ndarray

    def witness(self, a: int, b: int) -> Allocation:
        if a < 0 or b < 0 or a + b > self.capacity or not self.reach[a, b]:
            raise GenericError(f"pair ({a}, {b}) is not reachable", 400)
        bundles = (set(), set())
        while a > 0 or b > 0:
            item = int(self.pred_item[a, b])
            side = int(self.pred_side[a, b])
            bundles[side].add(item)
            if side == SIDE_A:
                a -= self.weights[item]
            else:
                b -= self.weights[item]
        return Allocation(bundles)


def shared_table(weights: Sequence[int], capacity: int) -> SharedTable:
    logger.info("building shared reachability table")
    weights = tuple(weights)
    size = capacity + 1
    sums = np.arange(size)
    inside = sums[:, None] + sums[None, :] <= capacity

    reach = np.zeros((size, size), dtype=bool)
    reach[0, 0] = True
    pred_item = np.full((size, size), -1, dtype=np.int32)
    pred_side = np.full((size, size), -1, dtype=np.int8)
    for item, w in enumerate(weights):
        if w > capacity:
            continue
        # both shifts read the previous layer so the item lands on one side only
        to_a = np.zeros_like(reach)
        to_a[w:, :] = reach[: size - w, :]
        to_a &= inside
        to_b = np.zeros_like(reach)
        to_b[:, w:] = reach[:, : size - w]
        to_b &= inside

        fresh_a = to_a & ~reach
        fresh_b = to_b & ~reach & ~to_a
        pred_item[fresh_a | fresh_b] = item
        pred_side[fresh_a] = SIDE_A
        pred_side[fresh_b] = SIDE_B
        reach |= to_a | to_b
    return SharedTable(weights, capacity, reach, pred_item, pred_side)


def pareto_shared(inst: Instance) -> ParetoFrontier:
    """Pareto frontier of a two agent shared items instance in O(nc^2)."""
    _check_two_agents(inst, Kind.SHARED)
    table = shared_table(inst.items[0], inst.capacity)

    logger.info("extracting shared frontier")
    size = inst.capacity + 1
    row_best = np.where(table.reach, np.arange(size)[None, :], -1).max(axis=1)
    a_values = np.flatnonzero(row_best >= 0)
    b_values = row_best[a_values]

    entries = tuple(
        FrontierEntry((a, b), inst, partial(table.witness, a, b))
        for a, b in _staircase(a_values, b_values)
    )
    return ParetoFrontier(inst, entries)


def pareto_frontier(inst: Instance) -> ParetoFrontier:
    """Frontier of any instance: dynamic programs for two agents, the oracle beyond."""
    if inst.agent_count == 2:
        if inst.kind is Kind.SEPARATE:
            return pareto_separate(inst)
        return pareto_shared(inst)

    from fairsum.oracle import oracle_frontier

    logger.info(f"{inst.agent_count} agents, falling back to enumeration")
    return oracle_frontier(inst)


def reconstruct(entry: FrontierEntry, instance: Optional[Instance] = None) -> Allocation:
    """Witness allocation of a frontier entry, checked against its utilities."""
    inst = entry.instance
    if instance is not None and instance is not inst and instance != inst:
        raise GenericError("frontier entry belongs to another instance", 400)
    allocation = entry.trace()
    if not allocation.feasible(inst) or allocation.utilities(inst) != entry.utilities:
        raise GenericError(
            f"stale frontier entry {entry.utilities}: witness does not reproduce it", 400
        )
    return allocation


def packing_lemma_holds(frontier: ParetoFrontier) -> bool:
    """Every entry below the optimum leaves less room than the largest item."""
    inst = frontier.instance
    if not frontier.entries or not inst.weights:
        return True
    optimum = max(entry.total for entry in frontier)
    threshold = inst.capacity - max(inst.weights)
    return all(
        entry.total > threshold for entry in frontier if entry.total < optimum
    )
