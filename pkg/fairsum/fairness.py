# fairness.py | system optimum, maximin, kalai-smorodinski and proportional fairness
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

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from fairsum.data import GenericError, logger
from fairsum.frontier import ParetoFrontier, UtilityVector, pareto_frontier, subset_sum_table
from fairsum.instance import Instance, alpha_of
from fairsum.util import rational_to_json


@dataclass(frozen=True)
class FairnessReport:
    """Every criterion's solutions for one instance.

    `mm` and `ks` are the designated representatives (largest total, then
    lexicographically largest); `mm_min` and `ks_min` the smallest total ones.
    """

    frontier: ParetoFrontier
    optimum: UtilityVector
    zstar: int
    bests: Tuple[int, ...]
    mm_set: Tuple[UtilityVector, ...]
    mm: UtilityVector
    mm_min: UtilityVector
    ks_set: Tuple[UtilityVector, ...]
    ks: UtilityVector
    ks_min: UtilityVector
    nash_set: Tuple[UtilityVector, ...]
    nash_product: int
    pf: Optional[UtilityVector]

    @property
    def instance(self) -> Instance:
        return self.frontier.instance

    @property
    def pf_exists(self) -> bool:
        return self.pf is not None


def _vectors(frontier: ParetoFrontier) -> List[UtilityVector]:
    if not frontier.entries:
        raise GenericError("empty frontier", 100)
    return [entry.utilities for entry in frontier]


def _argmax(vectors: Iterable[UtilityVector], key) -> List[UtilityVector]:
    vectors = list(vectors)
    best = max(key(v) for v in vectors)
    return sorted(v for v in vectors if key(v) == best)


def representative(vectors: Sequence[UtilityVector]) -> UtilityVector:
    return max(vectors, key=lambda v: (sum(v), v))


def smallest_total(vectors: Sequence[UtilityVector]) -> UtilityVector:
    return min(vectors, key=lambda v: (sum(v), v))


def system_optimum(frontier: ParetoFrontier) -> Tuple[UtilityVector, int]:
    optimum = representative(_vectors(frontier))
    return optimum, sum(optimum)


def best_alone(inst: Instance, agent: int) -> int:
    """The most agent `agent` can get with the whole capacity to itself."""
    return subset_sum_table(inst.agent_items(agent), inst.capacity).best()


def maximin(frontier: ParetoFrontier) -> List[UtilityVector]:
    return _argmax(_vectors(frontier), min)


def ks_ratios(utilities: UtilityVector, bests: Sequence[int]) -> List[Fraction]:
    # an agent that can get nothing is never shortchanged
    return [Fraction(u, b) if b > 0 else Fraction(1) for u, b in zip(utilities, bests)]


def kalai_smorodinski(frontier: ParetoFrontier, bests: Sequence[int]) -> List[UtilityVector]:
    vectors = _vectors(frontier)
    if len(bests) != frontier.instance.agent_count:
        raise GenericError(f"need {frontier.instance.agent_count} bests, got {len(bests)}", 990)
    if not any(bests):
        raise GenericError("every agent's best is zero", 500)
    return _argmax(vectors, lambda v: min(ks_ratios(v, bests)))


def nash_max(frontier: ParetoFrontier) -> List[UtilityVector]:
    return _argmax(_vectors(frontier), math.prod)


def pf_holds(candidate: UtilityVector, others: Iterable[UtilityVector]) -> bool:
    """True if no vector in `others` gains more relatively than it loses.

    Checks sum_j y_j / x_j <= k with integers: sum_j y_j * (P / x_j) <= k * P
    where P is the product of the candidate's utilities.
    """
    if any(u <= 0 for u in candidate):
        return False
    product = math.prod(candidate)
    shares = [product // u for u in candidate]
    limit = len(candidate) * product
    return all(
        sum(y * share for y, share in zip(other, shares)) <= limit for other in others
    )


def pf_candidates(frontier: ParetoFrontier) -> List[UtilityVector]:
    """Every frontier entry meeting the proportional fairness condition."""
    vectors = _vectors(frontier)
    return [v for v in vectors if pf_holds(v, vectors)]


def proportional_fair(frontier: ParetoFrontier, exhaustive: bool = False) -> Optional[UtilityVector]:
    """The proportional fair vector, or None when there is none.

    Only Nash product maximizers can be proportional fair, so those are tested
    unless `exhaustive` asks for every entry to be tried.
    """
    vectors = _vectors(frontier)
    if exhaustive:
        found = pf_candidates(frontier)
        if len(found) > 1:
            logger.error(f"{len(found)} proportional fair vectors: {found}")
        return found[0] if found else None

    for candidate in nash_max(frontier):
        if pf_holds(candidate, vectors):
            return candidate
    return None


def mutually_proportional(x: UtilityVector, y: UtilityVector) -> bool:
    """Whether x and y both pass the proportional fairness test against each other."""
    if len(x) != len(y):
        raise GenericError("vectors differ in length", 990)
    return pf_holds(x, [y]) and pf_holds(y, [x])


def solve(inst: Instance, frontier: Optional[ParetoFrontier] = None) -> FairnessReport:
    """Computes the frontier (unless given) and every criterion on it."""
    if frontier is None:
        frontier = pareto_frontier(inst)
    logger.info(f"solving {inst.label or 'instance'} over {len(frontier)} frontier entries")

    optimum, zstar = system_optimum(frontier)
    bests = tuple(best_alone(inst, agent) for agent in range(inst.agent_count))
    mm_set = maximin(frontier)
    if any(bests):
        ks_set = kalai_smorodinski(frontier, bests)
    else:
        # nothing to share, every entry is (0, ..., 0)
        ks_set = mm_set
    nash_set = nash_max(frontier)
    pf = proportional_fair(frontier)

    return FairnessReport(
        frontier=frontier,
        optimum=optimum,
        zstar=zstar,
        bests=bests,
        mm_set=tuple(mm_set),
        mm=representative(mm_set),
        mm_min=smallest_total(mm_set),
        ks_set=tuple(ks_set),
        ks=representative(ks_set),
        ks_min=smallest_total(ks_set),
        nash_set=tuple(nash_set),
        nash_product=math.prod(nash_set[0]),
        pf=pf,
    )


def _criterion_dict(vectors: Sequence[UtilityVector], rep, smallest) -> Dict[str, Any]:
    return {
        "set": [list(v) for v in vectors],
        "representative": list(rep),
        "min_total": list(smallest),
    }


def report_to_dict(report: FairnessReport) -> Dict[str, Any]:
    inst = report.instance
    return {
        "label": inst.label,
        "kind": inst.kind.value,
        "c": inst.capacity,
        "k": inst.agent_count,
        "alpha": rational_to_json(alpha_of(inst)) if inst.weights else None,
        "trivial": inst.trivial,
        "frontier": [list(entry.utilities) for entry in report.frontier],
        "system_optimum": {"utilities": list(report.optimum), "zstar": report.zstar},
        "bests": list(report.bests),
        "mm": _criterion_dict(report.mm_set, report.mm, report.mm_min),
        "ks": _criterion_dict(report.ks_set, report.ks, report.ks_min),
        "nash": {
            "set": [list(v) for v in report.nash_set],
            "product": str(report.nash_product),
        },
        "pf": {
            "exists": report.pf_exists,
            "utilities": list(report.pf) if report.pf_exists else None,
        },
    }
