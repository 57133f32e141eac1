# oracle.py | brute force ground truth for small instances
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

from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from fairsum import config
from fairsum.data import GenericError, logger
from fairsum.fairness import maximin, nash_max, pf_holds, proportional_fair, solve
from fairsum.families import gen_random
from fairsum.frontier import (
    Allocation,
    FrontierEntry,
    ParetoFrontier,
    UtilityVector,
    packing_lemma_holds,
    pareto_frontier,
    reconstruct,
)
from fairsum.instance import Instance, Kind, instance_to_dict
from fairsum.pof import Criterion, bound_pf_general, pof_of
from fairsum.sweep import run_jobs


def state_count(inst: Instance) -> int:
    """Assignments the oracle has to look at."""
    if inst.kind is Kind.SHARED:
        return (inst.agent_count + 1) ** len(inst.items[0])
    return sum(2 ** len(weights) for weights in inst.items)


def _check_size(inst: Instance, k: Optional[int]):
    if k is not None and k != inst.agent_count:
        raise GenericError(f"instance has {inst.agent_count} agents, not {k}", 990)
    states = state_count(inst)
    if states > config.options["oracle_size_guard"]:
        raise GenericError(
            f"{states} assignment states exceed the oracle guard of "
            f"{config.options['oracle_size_guard']}",
            300,
        )


def _bits(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _subset_sums(weights: Sequence[int], capacity: int) -> Dict[int, int]:
    """Every subset sum up to capacity, with the smallest bitmask reaching it."""
    sums = np.zeros(1, dtype=np.int64)
    for w in weights:
        sums = np.concatenate((sums, sums + w))
    distinct, first = np.unique(sums, return_index=True)
    keep = distinct <= capacity
    return dict(zip(distinct[keep].tolist(), first[keep].tolist()))


def _enumerate_separate(inst: Instance) -> Dict[UtilityVector, Allocation]:
    per_agent = [_subset_sums(weights, inst.capacity) for weights in inst.items]
    vectors = np.zeros((1, 0), dtype=np.int64)
    for sums in per_agent:
        values = np.array(sorted(sums), dtype=np.int64)
        rows = np.repeat(vectors, len(values), axis=0)
        column = np.tile(values, len(vectors))[:, None]
        vectors = np.hstack((rows, column))
        vectors = vectors[vectors.sum(axis=1) <= inst.capacity]

    found = {}
    for vector in map(tuple, vectors.tolist()):
        bundles = tuple(_bits(per_agent[j][u]) for j, u in enumerate(vector))
        found[vector] = Allocation(bundles)
    return found


def _enumerate_shared(inst: Instance) -> Dict[UtilityVector, Allocation]:
    # each item goes to one agent or stays out; code digit i (base k+1) is item i's choice
    k = inst.agent_count
    weights = inst.items[0]
    utilities = np.zeros((1, k), dtype=np.int64)
    codes = np.zeros(1, dtype=np.int64)
    for i, w in enumerate(weights):
        place = (k + 1) ** i
        blocks, block_codes = [utilities], [codes]
        for agent in range(k):
            moved = utilities.copy()
            moved[:, agent] += w
            blocks.append(moved)
            block_codes.append(codes + (agent + 1) * place)
        utilities = np.vstack(blocks)
        codes = np.concatenate(block_codes)
        fits = utilities.sum(axis=1) <= inst.capacity
        utilities, codes = utilities[fits], codes[fits]

    distinct, first = np.unique(utilities, axis=0, return_index=True)
    found = {}
    for vector, index in zip(map(tuple, distinct.tolist()), first.tolist()):
        code = int(codes[index])
        bundles = [set() for _ in range(k)]
        for item in range(len(weights)):
            code, choice = divmod(code, k + 1)
            if choice:
                bundles[choice - 1].add(item)
        found[vector] = Allocation(tuple(bundles))
    return found


def enumerate_all(inst: Instance, k: Optional[int] = None) -> Dict[UtilityVector, Allocation]:
    """Every distinct feasible utility vector with one allocation reaching it."""
    _check_size(inst, k)
    logger.info(f"enumerating {state_count(inst)} assignment states")
    if inst.kind is Kind.SHARED:
        return _enumerate_shared(inst)
    return _enumerate_separate(inst)


def pareto_filter(vectors: Sequence[UtilityVector]) -> List[UtilityVector]:
    """The non dominated vectors, ascending."""
    kept: List[UtilityVector] = []
    kept_array = np.zeros((0, len(vectors[0]) if vectors else 0), dtype=np.int64)
    # a dominating vector is lexicographically larger, so it is seen first
    for vector in sorted(set(vectors), reverse=True):
        candidate = np.array(vector, dtype=np.int64)
        if len(kept) and (kept_array >= candidate).all(axis=1).any():
            continue
        kept.append(vector)
        kept_array = np.vstack((kept_array, candidate))
    return sorted(kept)


def _stored(allocation: Allocation) -> Allocation:
    return allocation


def _frontier_of(inst: Instance, feasible: Dict[UtilityVector, Allocation]) -> ParetoFrontier:
    entries = tuple(
        FrontierEntry(vector, inst, partial(_stored, feasible[vector]))
        for vector in pareto_filter(list(feasible))
    )
    return ParetoFrontier(inst, entries)


def oracle_frontier(inst: Instance, k: Optional[int] = None) -> ParetoFrontier:
    return _frontier_of(inst, enumerate_all(inst, k))


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    counterexample: Optional[Dict[str, Any]] = None


@dataclass(frozen=True)
class OracleReport:
    instance: Instance
    frontier: ParetoFrontier = field(repr=False)
    verdicts: Tuple[Verdict, ...]
    observations: Dict[str, Any]

    @property
    def holds(self) -> bool:
        return all(verdict.holds for verdict in self.verdicts)

    def failures(self) -> List[Verdict]:
        return [verdict for verdict in self.verdicts if not verdict.holds]


def _verdict(inst: Instance, name: str, holds: bool, **payload) -> Verdict:
    if holds:
        return Verdict(name, True)
    logger.warning(f"{name} fails on {inst.label or 'instance'}")
    counterexample = {"instance": instance_to_dict(inst)}
    counterexample.update(
        {key: [list(v) for v in vectors] for key, vectors in payload.items()}
    )
    return Verdict(name, False, counterexample)


def check_theorems(inst: Instance, k: Optional[int] = None) -> OracleReport:
    """Checks the general fairness theorems on the complete feasible set."""
    feasible_map = enumerate_all(inst, k)
    feasible = list(feasible_map)
    truth = _frontier_of(inst, feasible_map)
    two_agents = inst.agent_count == 2
    verdicts = []

    if two_agents:
        dp = pareto_frontier(inst)
        dp_set, truth_set = dp.utility_set(), truth.utility_set()
        verdicts.append(
            _verdict(
                inst,
                "frontier_equivalence",
                dp_set == truth_set,
                dp_only=sorted(dp_set - truth_set),
                oracle_only=sorted(truth_set - dp_set),
            )
        )
        broken = []
        for entry in dp:
            try:
                reconstruct(entry, inst)
            except GenericError:
                broken.append(entry.utilities)
        verdicts.append(_verdict(inst, "witness_soundness", not broken, entries=broken))

    report = solve(inst, frontier=truth)

    pf_found = [x for x in truth.utility_set() if pf_holds(x, feasible)]
    pf_found.sort()
    verdicts.append(_verdict(inst, "pf_unique", len(pf_found) <= 1, pf=pf_found))

    pf_all = pf_found[0] if pf_found else None
    pf_frontier = proportional_fair(truth, exhaustive=True)
    verdicts.append(
        _verdict(
            inst,
            "pf_frontier_sufficient",
            pf_frontier == pf_all,
            frontier_pf=[pf_frontier] if pf_frontier else [],
            feasible_pf=[pf_all] if pf_all else [],
        )
    )

    pf = pf_all
    mm_set = maximin(truth)
    if pf is not None:
        nash = nash_max(truth)
        verdicts.append(_verdict(inst, "pf_in_nash_max", pf in nash, pf=[pf], nash=nash))

        pof_pf = pof_of(inst, Criterion.PF, report=report) if report.zstar else None
        general = bound_pf_general(inst.agent_count)
        verdicts.append(
            _verdict(
                inst,
                "pf_general_bound",
                pof_pf is None or pof_pf.pof <= general,
                pf=[pf],
            )
        )

        if two_agents:
            larger = [v for v in mm_set if sum(v) > sum(pf)]
            verdicts.append(
                _verdict(inst, "pf_total_dominates_mm", not larger, pf=[pf], mm=larger)
            )

        if inst.kind is Kind.SHARED:
            equal = len(set(pf)) == 1
            optimal = sum(pf) == report.zstar
            verdicts.append(
                _verdict(inst, "shared_pf_system_optimal", equal and optimal, pf=[pf])
            )

    if len(set(report.bests)) == 1:
        verdicts.append(
            _verdict(
                inst,
                "ks_equals_mm_for_equal_bests",
                set(report.ks_set) == set(report.mm_set),
                ks=list(report.ks_set),
                mm=list(report.mm_set),
            )
        )

    if report.zstar:
        violated = []
        for criterion in Criterion:
            record = pof_of(inst, criterion, report=report)
            if record is not None and not record.within_bounds:
                violated.append((record.zstar, record.zfair))
        verdicts.append(_verdict(inst, "bounds_sound", not violated, totals=violated))

    verdicts.append(_verdict(inst, "packing_lemma", packing_lemma_holds(truth)))

    observations = {
        "feasible_count": len(feasible),
        "frontier_size": len(truth),
        "zstar": report.zstar,
        "pf_total": sum(pf) if pf is not None else None,
        "mm_totals": sorted({sum(v) for v in mm_set}),
    }
    return OracleReport(inst, truth, tuple(verdicts), observations)


def _random_check(job: Tuple[int, int, str, int, int]) -> OracleReport:
    n, c, kind, k, seed = job
    alpha_cap = "1/2" if seed % 2 else "1"
    return check_theorems(gen_random(n, c, alpha_cap, Kind(kind), k, seed))


def check_random(
    count: int,
    kind=Kind.SEPARATE,
    k: int = 2,
    n: Optional[int] = None,
    c: int = 60,
    seed: int = 0,
    workers: Optional[int] = None,
) -> List[OracleReport]:
    """Checks `count` random instances with consecutive seeds.

    n is per agent for separate items (default: 12 items spread over the
    agents) and the common list size for shared items (default 8).
    """
    if count < 1:
        raise GenericError("count must be positive", 991)
    kind = Kind(kind)
    if n is None:
        n = 12 // k if kind is Kind.SEPARATE else 8
    jobs = [(n, c, kind.value, k, seed + i) for i in range(count)]
    reports = run_jobs(_random_check, jobs, workers)
    return sorted(reports, key=lambda r: r.instance.label)


def report_to_dict(report: OracleReport) -> Dict[str, Any]:
    return {
        "instance": instance_to_dict(report.instance),
        "holds": report.holds,
        "frontier": [list(entry.utilities) for entry in report.frontier],
        "observations": report.observations,
        "verdicts": [
            {
                "name": verdict.name,
                "holds": verdict.holds,
                "counterexample": verdict.counterexample,
            }
            for verdict in report.verdicts
        ],
    }
