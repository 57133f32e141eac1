# pof.py | price of fairness and its bound curves in alpha
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
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from fairsum import config
from fairsum.data import GenericError, logger
from fairsum.fairness import FairnessReport, solve
from fairsum.instance import Instance, Kind, alpha_of
from fairsum.util import parse_rational, rational_to_json, sqrt_enclosure

Bounds = Tuple[Fraction, Fraction]

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


class Criterion(Enum):
    MM = "mm"
    KS = "ks"
    PF = "pf"


@dataclass(frozen=True)
class PofRecord:
    """Exact price of fairness of one instance under one criterion."""

    label: str
    scenario: Kind
    criterion: Criterion
    alpha: Fraction
    zstar: int
    zfair: int
    pof: Fraction
    bound_lower: Fraction
    bound_upper: Fraction
    limit: Optional[Fraction] = None
    scale: Optional[int] = None

    @property
    def within_bounds(self) -> bool:
        return self.pof <= self.bound_upper

    @property
    def tight(self) -> Optional[bool]:
        """Whether pof is within tightness_slack / scale of the analytic limit."""
        if self.limit is None or self.scale is None:
            return None
        return self.limit - self.pof <= Fraction(config.options["tightness_slack"], self.scale)


def _check_alpha(alpha) -> Fraction:
    alpha = parse_rational(alpha)
    if not 0 < alpha <= 1:
        raise GenericError(f"alpha {alpha} outside (0, 1]", 991)
    return alpha


def bound_mm_separate(alpha) -> Bounds:
    """Maximin bounds with separate items on [2/3, 1], [1/2, 2/3) and (0, 1/2)."""
    alpha = _check_alpha(alpha)
    if alpha >= TWO_THIRDS:
        upper = 2 - 1 / alpha
    elif alpha >= HALF:
        upper = HALF
    else:
        upper = alpha
    if alpha >= HALF:
        return upper, upper
    return Fraction(1, math.ceil(1 / alpha)), upper


def bound_ks_separate(alpha) -> Bounds:
    return bound_mm_separate(alpha)


def bound_pf_separate(alpha) -> Bounds:
    alpha = _check_alpha(alpha)
    if alpha >= HALF:
        return HALF, HALF
    return Fraction(1, math.ceil(1 / alpha)), alpha


def bound_mm_shared(alpha) -> Bounds:
    """Maximin (and so Kalai-Smorodinski) bounds with shared items.

    Pieces are (2/3, 1], (1/3, 2/3] and (0, 1/3].
    """
    alpha = _check_alpha(alpha)
    if alpha > TWO_THIRDS:
        upper = 2 * alpha - 1
    elif alpha > THIRD:
        upper = THIRD
    else:
        upper = alpha
    if alpha > THIRD:
        return upper, upper
    return Fraction(1, 2 * math.ceil(1 / (2 * alpha)) + 1), upper


def bound_pf_shared(alpha) -> Bounds:
    # a proportional fair solution with shared items is system optimal
    _check_alpha(alpha)
    return Fraction(0), Fraction(0)


def bound_pf_general(k: int) -> Fraction:
    if k < 2:
        raise GenericError("k must be at least 2", 991)
    return Fraction(k - 1, k)


@dataclass(frozen=True)
class BoundCurve:
    scenario: Kind
    criterion: Criterion
    evaluate: Callable[[Fraction], Bounds]

    def __call__(self, alpha) -> Bounds:
        return self.evaluate(alpha)


CURVES: Dict[Tuple[Kind, Criterion], BoundCurve] = {
    (scenario, criterion): BoundCurve(scenario, criterion, evaluate)
    for scenario, criterion, evaluate in (
        (Kind.SEPARATE, Criterion.MM, bound_mm_separate),
        (Kind.SEPARATE, Criterion.KS, bound_ks_separate),
        (Kind.SEPARATE, Criterion.PF, bound_pf_separate),
        (Kind.SHARED, Criterion.MM, bound_mm_shared),
        (Kind.SHARED, Criterion.KS, bound_mm_shared),
        (Kind.SHARED, Criterion.PF, bound_pf_shared),
    )
}


def bound_curve(scenario: Kind, criterion: Criterion) -> BoundCurve:
    return CURVES[(Kind(scenario), Criterion(criterion))]


def k_agent_bounds(inst: Instance, criterion: Criterion, alpha: Fraction) -> Bounds:
    """Bounds that hold for any number of agents."""
    if criterion is not Criterion.PF:
        return Fraction(0), alpha
    if inst.kind is Kind.SHARED:
        return Fraction(0), Fraction(0)
    return Fraction(0), min(alpha, bound_pf_general(inst.agent_count))


def instance_bounds(inst: Instance, criterion: Criterion) -> Bounds:
    alpha = alpha_of(inst)
    if inst.agent_count == 2:
        return bound_curve(inst.kind, criterion)(alpha)
    return k_agent_bounds(inst, criterion, alpha)


def pof_of(
    inst: Instance,
    criterion,
    report: Optional[FairnessReport] = None,
    limit: Optional[Fraction] = None,
    scale: Optional[int] = None,
) -> Optional[PofRecord]:
    """Price of fairness of the criterion's representative, None if PF does not exist."""
    criterion = Criterion(criterion)
    if report is None:
        report = solve(inst)
    if report.zstar == 0:
        raise GenericError("system optimum is zero", 500)

    if criterion is Criterion.MM:
        fair = report.mm
    elif criterion is Criterion.KS:
        fair = report.ks
    else:
        if not report.pf_exists:
            logger.info(f"{inst.label or 'instance'} has no proportional fair solution")
            return None
        fair = report.pf

    zfair = sum(fair)
    lower, upper = instance_bounds(inst, criterion)
    return PofRecord(
        label=inst.label,
        scenario=inst.kind,
        criterion=criterion,
        alpha=alpha_of(inst),
        zstar=report.zstar,
        zfair=zfair,
        pof=Fraction(report.zstar - zfair, report.zstar),
        bound_lower=lower,
        bound_upper=upper,
        limit=limit,
        scale=scale,
    )


def bertsimas_interval(bests: Sequence[int], k: Optional[int] = None) -> Bounds:
    """Encloses (k-1)/k + F - G for unequal best utilities.

    F = min b / sum b and G = (2 sqrt(k) - 1) / k * min b / max b. Only sqrt(k)
    is inexact, so the enclosure comes from a rational enclosure of it.
    """
    bests = list(bests)
    if k is None:
        k = len(bests)
    if k < 2 or len(bests) != k:
        raise GenericError(f"need k >= 2 bests, got {len(bests)} for k={k}", 991)
    if any(b < 0 for b in bests):
        raise GenericError("bests must be non negative", 990)
    if max(bests) == 0:
        raise GenericError("every best is zero", 500)

    smallest = min(bests)
    f = Fraction(smallest, sum(bests))
    relative = Fraction(smallest, max(bests))
    root_lo, root_hi = sqrt_enclosure(k, config.options["sqrt_precision"])
    base = Fraction(k - 1, k) + f

    def value(root: Fraction) -> Fraction:
        return base - (2 * root - 1) / k * relative

    # G grows with the root, so the lower root gives the upper end
    return value(root_hi), value(root_lo)


def bertsimas_bound(bests: Sequence[int], k: Optional[int] = None) -> Fraction:
    return bertsimas_interval(bests, k)[1]


def _scenario(scenario) -> Kind:
    try:
        return Kind(scenario)
    except ValueError as e:
        raise GenericError(f"unknown scenario {scenario!r}", 990) from e


def gap_ratio(alpha, scenario) -> Fraction:
    """Upper over lower maximin bound: alpha * ceil(1 / alpha) or alpha * (2 ceil(1 / 2 alpha) + 1)."""
    lower, upper = bound_curve(_scenario(scenario), Criterion.MM)(alpha)
    return upper / lower


def gap_ratio_cap(alpha, scenario) -> Fraction:
    """Strict cap on `gap_ratio` where the maximin bounds differ."""
    alpha = _check_alpha(alpha)
    scenario = _scenario(scenario)
    if scenario is Kind.SEPARATE:
        if alpha >= HALF:
            raise GenericError("separate bounds coincide for alpha >= 1/2", 991)
        h = math.ceil(1 / alpha)
        return Fraction(h, h - 1)
    if alpha > THIRD:
        raise GenericError("shared bounds coincide for alpha > 1/3", 991)
    h = math.ceil(1 / (2 * alpha))
    return Fraction(2 * h + 1, 2 * h - 2)


def record_to_dict(record: PofRecord) -> Dict[str, Any]:
    payload = {
        "label": record.label,
        "scenario": record.scenario.value,
        "criterion": record.criterion.value,
        "alpha": rational_to_json(record.alpha),
        "zstar": record.zstar,
        "zfair": record.zfair,
        "pof": rational_to_json(record.pof),
        "bound_lower": rational_to_json(record.bound_lower),
        "bound_upper": rational_to_json(record.bound_upper),
        "within_bounds": record.within_bounds,
    }
    if record.limit is not None:
        payload["limit"] = rational_to_json(record.limit)
        payload["scale"] = record.scale
        payload["tight"] = record.tight
    return payload
