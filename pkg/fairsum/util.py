# util.py | assorted utility functions that are standalone
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

import hashlib
import json
import math
import os
import tempfile
from fractions import Fraction
from typing import Any, Dict, Tuple, Union

import filelock

from fairsum.data import GenericError

Number = Union[int, Fraction]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parses "3/4", "7" or "0.003" into an exact Fraction.

    Decimal strings are read exactly, never through a float.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise GenericError(f"not a rational: {text!r}", 990)
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise GenericError(f"not a rational: {text!r}", 990) from e


def rational_to_json(value: Number) -> Dict[str, int]:
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def rational_from_json(payload: Dict[str, Any]) -> Fraction:
    try:
        return Fraction(int(payload["num"]), int(payload["den"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise GenericError(f"not a rational pair: {payload!r}", 990) from e


def sqrt_enclosure(n: int, precision: int) -> Tuple[Fraction, Fraction]:
    """Returns rationals lo <= sqrt(n) <= hi with hi - lo <= 1/precision.

    Both ends are equal when n is a perfect square.
    """
    if n < 0:
        raise GenericError("square root of a negative number", 991)
    root = math.isqrt(n)
    if root * root == n:
        return Fraction(root), Fraction(root)
    scaled = math.isqrt(n * precision * precision)
    return Fraction(scaled, precision), Fraction(scaled + 1, precision)


def lcm(*values: int) -> int:
    result = 1
    for value in values:
        result = result * value // math.gcd(result, value)
    return result


def dump_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def lock_path(path: str) -> str:
    """Lock file for an artifact, kept in the temp directory and out of the output tree."""
    digest = hashlib.sha1(os.path.abspath(path).encode()).hexdigest()
    return os.path.join(tempfile.gettempdir(), f"fairsum-{digest}.lock")


def write_artifact(path: str, text: str):
    """Writes text to path while holding its lock."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    lock = filelock.FileLock(lock_path(path))
    with lock:
        with open(path, "w", newline="") as f:
            f.write(text)
