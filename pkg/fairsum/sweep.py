# sweep.py | price of fairness sweeps over families and random batches
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

import concurrent.futures
import itertools
import os
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import pandas as pd

from fairsum import config
from fairsum.data import GenericError, logger
from fairsum.fairness import solve
from fairsum.families import analytic_limit, family_spec, gen_family, gen_random, sweep_params
from fairsum.instance import Instance, Kind
from fairsum.pof import Criterion, PofRecord, pof_of
from fairsum.util import parse_rational

CSV_COLUMNS = [
    "label",
    "scenario",
    "criterion",
    "alpha_num",
    "alpha_den",
    "zstar",
    "zfair",
    "pof_num",
    "pof_den",
    "lb_num",
    "lb_den",
    "ub_num",
    "ub_den",
    "within",
]

RANDOM_ALPHA_CAPS = ("1/5", "1/3", "1/2", "2/3", "9/10", "1")


def resolve_workers(requested: Optional[int] = None) -> int:
    """Worker count: explicit request, then the environment, then the option, then cpu count."""
    if requested is not None:
        workers = requested
    elif os.getenv(config.options["workers_env"]):
        try:
            workers = int(os.environ[config.options["workers_env"]])
        except ValueError as e:
            raise GenericError(
                f"{config.options['workers_env']} must be an integer", 990
            ) from e
    elif config.options["workers"] is not None:
        workers = config.options["workers"]
    else:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise GenericError("worker count must be positive", 991)
    return workers


def run_jobs(function: Callable, jobs: Sequence, workers: Optional[int] = None) -> List:
    """Maps function over jobs, in worker processes when more than one is allowed."""
    workers = resolve_workers(workers)
    if workers == 1 or len(jobs) <= 1:
        return [function(job) for job in jobs]
    logger.info(f"running {len(jobs)} jobs on {workers} workers")
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _sorted(records: Iterable[PofRecord]) -> List[PofRecord]:
    return sorted(records, key=lambda r: (r.label, r.criterion.value))


def instance_records(
    inst: Instance,
    limits: Optional[Mapping[str, Fraction]] = None,
    scale: Optional[int] = None,
) -> List[PofRecord]:
    """One record per criterion, skipping proportional fairness when it does not exist."""
    limits = limits or {}
    report = solve(inst)
    records = []
    for criterion in Criterion:
        record = pof_of(
            inst,
            criterion,
            report=report,
            limit=limits.get(criterion.value),
            scale=scale,
        )
        if record is not None:
            records.append(record)
    return records


def expand_ranges(params: Mapping[str, Any]) -> List[Dict[str, Any]]:
    """Expands "lo..hi" integer ranges into one parameter map per combination."""
    keys = sorted(params)
    choices = []
    for key in keys:
        value = params[key]
        if isinstance(value, str) and ".." in value:
            lo, _, hi = value.partition("..")
            try:
                choices.append(list(range(int(lo), int(hi) + 1)))
            except ValueError as e:
                raise GenericError(f"bad range {value!r} for {key}", 990) from e
        else:
            choices.append([value])
    return [dict(zip(keys, combination)) for combination in itertools.product(*choices)]


def _family_point(job: Tuple[str, Dict[str, Any]]) -> List[PofRecord]:
    name, params = job
    inst = gen_family(name, params)
    limits = {
        criterion.value: analytic_limit(name, params, criterion.value)
        for criterion in Criterion
    }
    # tightness is measured at the resolution of eps
    return instance_records(inst, limits, scale=params["eps"].denominator)


def sweep_family(
    name: str,
    params: Optional[Mapping[str, Any]] = None,
    alpha_grid: Sequence = (),
    eps_schedule: Sequence = ("1/10", "1/100", "1/1000"),
    workers: Optional[int] = None,
) -> List[PofRecord]:
    """Solves a worst case family for every parameter combination and epsilon.

    Families with an `alpha` parameter take one point per grid value. Each
    epsilon picks the scale D through `sweep_params`.
    """
    spec = family_spec(name)
    params = dict(params or {})
    takes_alpha = "alpha" in spec.rational_params
    grid = [parse_rational(alpha) for alpha in alpha_grid]
    if takes_alpha and not grid and "alpha" not in params:
        raise GenericError(f"{name} needs a non empty alpha grid", 100)
    if grid and not takes_alpha:
        logger.warning(f"{name} has no alpha parameter, ignoring the alpha grid")
        grid = []
    if any(not 0 < alpha <= 1 for alpha in grid):
        raise GenericError("alpha grid values must lie in (0, 1]", 991)

    schedule = [parse_rational(eps) for eps in eps_schedule]
    if not schedule:
        raise GenericError("empty epsilon schedule", 100)
    if any(later >= earlier for earlier, later in zip(schedule, schedule[1:])):
        raise GenericError("epsilon schedule must be decreasing", 990)

    jobs = []
    for base in expand_ranges(params):
        for alpha in grid or [None]:
            point = dict(base)
            if alpha is not None:
                point["alpha"] = alpha
            for eps in schedule:
                jobs.append((name, sweep_params(name, point, eps)))

    logger.info(f"sweeping {name} over {len(jobs)} points")
    return _sorted(itertools.chain.from_iterable(run_jobs(_family_point, jobs, workers)))


def _random_point(job: Tuple[int, int, Any, str, int]) -> List[PofRecord]:
    n, c, alpha_cap, kind, seed = job
    return instance_records(gen_random(n, c, alpha_cap, Kind(kind), 2, seed))


def sweep_random(
    count: int,
    alpha_caps: Sequence = RANDOM_ALPHA_CAPS,
    kind=Kind.SEPARATE,
    n: int = 8,
    c: int = 60,
    seed: int = 0,
    workers: Optional[int] = None,
) -> List[PofRecord]:
    """Solves `count` random instances per alpha cap, seeds counting up from `seed`."""
    caps = [parse_rational(cap) for cap in alpha_caps]
    if not caps:
        raise GenericError("empty alpha grid", 100)
    if count < 1:
        raise GenericError("count must be positive", 991)
    kind = Kind(kind)

    jobs = []
    for stratum, cap in enumerate(caps):
        for i in range(count):
            jobs.append((n, c, cap, kind.value, seed + stratum * count + i))

    logger.info(f"sweeping {len(jobs)} random {kind.value} instances")
    records = _sorted(itertools.chain.from_iterable(run_jobs(_random_point, jobs, workers)))
    violations = [r for r in records if not r.within_bounds]
    for record in violations:
        logger.error(f"bound violated: {record.label} {record.criterion.value} pof={record.pof}")
    return records


def records_to_frame(records: Iterable[PofRecord]) -> pd.DataFrame:
    rows = [
        {
            "label": r.label,
            "scenario": r.scenario.value,
            "criterion": r.criterion.value,
            "alpha_num": r.alpha.numerator,
            "alpha_den": r.alpha.denominator,
            "zstar": r.zstar,
            "zfair": r.zfair,
            "pof_num": r.pof.numerator,
            "pof_den": r.pof.denominator,
            "lb_num": r.bound_lower.numerator,
            "lb_den": r.bound_lower.denominator,
            "ub_num": r.bound_upper.numerator,
            "ub_den": r.bound_upper.denominator,
            "within": str(r.within_bounds).lower(),
        }
        for r in records
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def records_to_csv(records: Iterable[PofRecord]) -> str:
    return records_to_frame(records).to_csv(index=False)
