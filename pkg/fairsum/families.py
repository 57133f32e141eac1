# families.py | worst case instance families and random instances
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
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from fairsum.data import GenericError, logger
from fairsum.instance import Instance, Kind
from fairsum.util import lcm, parse_rational

Params = Dict[str, Any]
RationalLists = List[List[Fraction]]

# Family weights are written for a unit capacity and scaled by D.
# params always hold "D" (int) and "eps" (Fraction) once normalised.


@dataclass(frozen=True)
class FamilySpec:
    name: str
    kind: Kind
    build: Callable[[Params], RationalLists]
    alpha: Callable[[Params], Fraction]
    denominators: Callable[[Params], Tuple[int, ...]] = lambda p: ()
    limits: Callable[[Params], Dict[str, Fraction]] = lambda p: {}
    integer_params: Tuple[str, ...] = ()
    rational_params: Tuple[str, ...] = ()
    defaults: Mapping[str, Any] = field(default_factory=dict)
    eps_units: int = 1
    check: Callable[[Params], Optional[str]] = lambda p: None
    agents: Callable[[Params], int] = lambda p: 2
    # eps2 stands for eps squared and sweeps keep it exact
    squared_eps: bool = False


def _between_two_thirds_and_one(p: Params) -> Optional[str]:
    if not Fraction(2, 3) <= p["alpha"] < 1:
        return "alpha must lie in [2/3, 1)"
    return None


def _sep_two_solutions(p: Params) -> RationalLists:
    eps = p["eps"]
    return [[Fraction(1), eps], [eps, eps]]


def _sep_large_alpha(p: Params) -> RationalLists:
    alpha, eps = p["alpha"], p["eps"]
    return [[alpha, 2 * eps], [1 - alpha + eps, p["eps2"]]]


def _sep_r_blocks(p: Params) -> RationalLists:
    r, eps = p["r"], p["eps"]
    return [[Fraction(1, r)] * r, [eps] * r]


def _shared_large_alpha(p: Params) -> RationalLists:
    alpha, eps = p["alpha"], p["eps"]
    return [[alpha, 1 - alpha + eps, 1 - alpha, eps]]


def _shared_odd_blocks(p: Params) -> RationalLists:
    h, eps = p["h"], p["eps"]
    return [[Fraction(1, 2 * h + 1)] * (2 * h + 1) + [eps, eps]]


def _k3_mm_beats_pf(p: Params) -> RationalLists:
    eps = p["eps"]
    fifth, half, quarter = Fraction(1, 5), Fraction(1, 2), Fraction(1, 4)
    return [
        [fifth + 2 * eps, fifth + eps],
        [half + 5 * eps, half + eps],
        [quarter + 7 * eps, quarter + 11 * eps],
    ]


def _k3_pf_below_mm(p: Params) -> RationalLists:
    # pf (20, 24, 80) totals 124, the unique maximin (22, 21, 82) totals 125
    unit = Fraction(1, 125)
    return [[20 * unit, 2 * unit], [21 * unit, 3 * unit], [80 * unit, 2 * unit]]


def _ks_below(p: Params) -> RationalLists:
    eps, eps2 = p["eps"], p["eps2"]
    quarter = Fraction(1, 4)
    return [
        [Fraction(1), quarter + eps2, quarter, quarter],
        [1 - 3 * eps, quarter, quarter, quarter - eps],
    ]


def _ks_above(p: Params) -> RationalLists:
    eps = p["eps"]
    return [
        [Fraction(1), Fraction(3, 4), Fraction(1, 2) + eps],
        [Fraction(1, 4) - eps, Fraction(1, 4) - 2 * eps, Fraction(0)],
    ]


def _pf_tight_k(p: Params) -> RationalLists:
    k, eps = p["k"], p["eps"]
    return [[Fraction(1), Fraction(1, k)]] + [[eps] for _ in range(k - 1)]


def _ks_below_check(p: Params) -> Optional[str]:
    if not 0 < p["eps2"] < p["eps"]:
        return "ks-below needs 0 < eps2 < eps"
    return None


def _ks_above_check(p: Params) -> Optional[str]:
    if not 0 < p["eps"] < Fraction(1, 10):
        return "ks-above needs 0 < eps < 1/10"
    return None


def _positive(name: str, minimum: int) -> Callable[[Params], Optional[str]]:
    def check(p: Params) -> Optional[str]:
        if p[name] < minimum:
            return f"{name} must be at least {minimum}"
        return None

    return check


def _mm_ks(value: Fraction) -> Dict[str, Fraction]:
    return {"mm": value, "ks": value}


FAMILIES: Dict[str, FamilySpec] = {
    spec.name: spec
    for spec in (
        FamilySpec(
            name="sep-two-solutions",
            kind=Kind.SEPARATE,
            build=_sep_two_solutions,
            alpha=lambda p: Fraction(1),
            limits=lambda p: _mm_ks(Fraction(1)),
        ),
        FamilySpec(
            name="sep-large-alpha",
            kind=Kind.SEPARATE,
            build=_sep_large_alpha,
            alpha=lambda p: p["alpha"],
            denominators=lambda p: (p["alpha"].denominator,),
            limits=lambda p: _mm_ks(2 - 1 / p["alpha"]),
            rational_params=("alpha", "eps2"),
            check=_between_two_thirds_and_one,
            squared_eps=True,
        ),
        FamilySpec(
            name="sep-r-blocks",
            kind=Kind.SEPARATE,
            build=_sep_r_blocks,
            alpha=lambda p: Fraction(1, p["r"]),
            denominators=lambda p: (p["r"],),
            limits=lambda p: {
                "mm": Fraction(1, p["r"]),
                "ks": Fraction(1, p["r"]),
                "pf": Fraction(1, p["r"]),
            },
            integer_params=("r",),
            defaults={"r": 2},
            check=_positive("r", 2),
        ),
        FamilySpec(
            name="shared-large-alpha",
            kind=Kind.SHARED,
            build=_shared_large_alpha,
            alpha=lambda p: p["alpha"],
            denominators=lambda p: (p["alpha"].denominator,),
            limits=lambda p: _mm_ks(2 * p["alpha"] - 1),
            rational_params=("alpha",),
            check=_between_two_thirds_and_one,
        ),
        FamilySpec(
            name="shared-odd-blocks",
            kind=Kind.SHARED,
            build=_shared_odd_blocks,
            alpha=lambda p: Fraction(1, 2 * p["h"] + 1),
            denominators=lambda p: (2 * p["h"] + 1,),
            limits=lambda p: _mm_ks(Fraction(1, 2 * p["h"] + 1)),
            integer_params=("h",),
            defaults={"h": 1},
            check=_positive("h", 1),
        ),
        FamilySpec(
            name="k3-mm-beats-pf",
            kind=Kind.SEPARATE,
            build=_k3_mm_beats_pf,
            alpha=lambda p: Fraction(1, 2) + 5 * p["eps"],
            denominators=lambda p: (20,),
            defaults={"eps": Fraction(3, 1000)},
            agents=lambda p: 3,
        ),
        FamilySpec(
            name="k3-pf-below-mm",
            kind=Kind.SEPARATE,
            build=_k3_pf_below_mm,
            alpha=lambda p: Fraction(16, 25),
            denominators=lambda p: (125,),
            agents=lambda p: 3,
        ),
        FamilySpec(
            name="ks-below",
            kind=Kind.SEPARATE,
            build=_ks_below,
            alpha=lambda p: Fraction(1),
            denominators=lambda p: (4,),
            rational_params=("eps2",),
            eps_units=2,
            check=_ks_below_check,
        ),
        FamilySpec(
            name="ks-above",
            kind=Kind.SEPARATE,
            build=_ks_above,
            alpha=lambda p: Fraction(1),
            denominators=lambda p: (4,),
            check=_ks_above_check,
        ),
        FamilySpec(
            name="pf-tight-k",
            kind=Kind.SEPARATE,
            build=_pf_tight_k,
            alpha=lambda p: Fraction(1),
            denominators=lambda p: (p["k"],),
            limits=lambda p: {"pf": Fraction(p["k"] - 1, p["k"])},
            integer_params=("k",),
            defaults={"k": 2},
            check=_positive("k", 2),
            agents=lambda p: p["k"],
        ),
    )
}


def family_names() -> Tuple[str, ...]:
    return tuple(sorted(FAMILIES))


def family_spec(name: str) -> FamilySpec:
    try:
        return FAMILIES[name]
    except KeyError as e:
        raise GenericError(
            f"unknown family {name!r}, expected one of {', '.join(family_names())}", 990
        ) from e


def _parse_int(name: str, value) -> int:
    if isinstance(value, bool):
        raise GenericError(f"{name} must be an integer", 990)
    if isinstance(value, int):
        return value
    try:
        return int(str(value).strip())
    except ValueError as e:
        raise GenericError(f"{name} must be an integer, got {value!r}", 990) from e


def normalize_params(name: str, params: Mapping[str, Any]) -> Params:
    """Validates a family parameter map and fills in the defaults.

    `D` is required. `eps` defaults to one scaled unit 1/D, `eps2` (the
    stand-in for the squared epsilon of "sep-large-alpha", or the smaller
    epsilon of "ks-below") defaults to 1/D resp. eps/2.
    """
    spec = family_spec(name)
    known = {"D", "eps"} | set(spec.integer_params) | set(spec.rational_params)
    unknown = set(params) - known
    if unknown:
        raise GenericError(f"unknown parameters {sorted(unknown)} for {name}", 990)
    if "D" not in params:
        raise GenericError(f"family {name} needs a scale D", 990)

    p: Params = dict(spec.defaults)
    p["D"] = _parse_int("D", params["D"])
    if p["D"] < 1:
        raise GenericError("D must be positive", 991)
    for key in spec.integer_params:
        if key in params:
            p[key] = _parse_int(key, params[key])
        if key not in p:
            raise GenericError(f"family {name} needs parameter {key}", 990)
    for key in ("eps",) + spec.rational_params:
        if key in params:
            p[key] = parse_rational(params[key])

    p.setdefault("eps", Fraction(1, p["D"]))
    if "eps2" in spec.rational_params:
        if name == "ks-below":
            p.setdefault("eps2", p["eps"] / 2)
        else:
            p.setdefault("eps2", Fraction(1, p["D"]))
    for key in spec.rational_params:
        if key not in p:
            raise GenericError(f"family {name} needs parameter {key}", 990)

    if p["eps"] <= 0:
        raise GenericError("eps must be positive", 991)
    problem = spec.check(p)
    if problem:
        raise GenericError(f"{name}: {problem}", 991)
    return p


def family_label(name: str, p: Params) -> str:
    return name + ":" + ",".join(f"{key}={p[key]}" for key in sorted(p))


def gen_family(name: str, params: Mapping[str, Any]) -> Instance:
    """Builds a worst case family instance scaled to integer weights by D."""
    spec = family_spec(name)
    p = normalize_params(name, params)
    scale = p["D"]

    lists = []
    for weights in spec.build(p):
        scaled = []
        for weight in weights:
            value = weight * scale
            if value.denominator != 1:
                raise GenericError(
                    f"{name}: weight {weight} is not integral at scale D={scale}", 992
                )
            if value < 0 or value > scale:
                raise GenericError(f"{name}: weight {weight} outside [0, 1]", 991)
            scaled.append(int(value))
        lists.append(tuple(scaled))

    label = family_label(name, p)
    logger.info(f"generated family instance {label}")
    return Instance(
        kind=spec.kind,
        capacity=scale,
        items=tuple(lists),
        agent_count=spec.agents(p),
        label=label,
    )


def declared_alpha(name: str, params: Mapping[str, Any]) -> Fraction:
    return family_spec(name).alpha(normalize_params(name, params))


def analytic_limit(name: str, params: Mapping[str, Any], criterion: str) -> Optional[Fraction]:
    """The PoF the family tends to as eps shrinks, or None if it has no limit for criterion."""
    return family_spec(name).limits(normalize_params(name, params)).get(criterion)


def sweep_params(name: str, params: Mapping[str, Any], eps: Fraction) -> Params:
    """Picks the scale for one sweep point.

    D is the smallest common multiple of eps' denominator and the family's own
    denominators, and eps becomes `eps_units` scaled units at that resolution.
    Families with `squared_eps` keep eps as given and scale by its squared
    denominator, so eps2 = eps**2 stays an integral weight.
    """
    spec = family_spec(name)
    eps = parse_rational(eps)
    if eps <= 0:
        raise GenericError("eps must be positive", 991)
    structural = {
        key: value for key, value in params.items() if key not in ("D", "eps", "eps2")
    }
    # denominators only depend on the structural parameters
    probe = normalize_params(name, {**structural, "D": 1, "eps": eps})
    if spec.squared_eps:
        scale = lcm(eps.denominator ** 2, *spec.denominators(probe))
        return {**structural, "D": scale, "eps": eps, "eps2": eps * eps}
    scale = lcm(eps.denominator, *spec.denominators(probe)) * spec.eps_units
    return {**structural, "D": scale, "eps": Fraction(spec.eps_units, scale)}


def gen_random(
    n: int,
    c: int,
    alpha_cap,
    kind: Kind = Kind.SEPARATE,
    k: int = 2,
    seed: int = 0,
) -> Instance:
    """Draws a non trivial random instance with weights in [1, floor(alpha_cap * c)].

    Separate instances get n items per agent, shared instances n items in total.
    Lists are redrawn until the total weight exceeds c.
    """
    alpha_cap = parse_rational(alpha_cap)
    if not 0 < alpha_cap <= 1:
        raise GenericError("alpha_cap must lie in (0, 1]", 991)
    if n < 1:
        raise GenericError("n must be at least 1", 991)
    if not isinstance(kind, Kind):
        kind = Kind(kind)
    upper = math.floor(alpha_cap * c)
    if upper < 1:
        raise GenericError("floor(alpha_cap * c) < 1, no weight can be drawn", 991)

    list_count = k if kind is Kind.SEPARATE else 1
    rng = random.Random(seed)

    def draw():
        return tuple(
            tuple(rng.randint(1, upper) for _ in range(n)) for _ in range(list_count)
        )

    items = draw()
    if list_count * n * upper <= c:
        # every draw fits completely, resampling cannot help
        logger.warning(f"random:{seed} is trivial: {list_count * n} items of at most {upper} fit in {c}")
    else:
        while sum(map(sum, items)) <= c:
            items = draw()

    return Instance(
        kind=kind,
        capacity=c,
        items=items,
        agent_count=k,
        label=f"random:{seed}",
    )
