# config.py | config data
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

from typing import Any, Dict

optional: Dict[str, Any] = {
    "name": "fairsum",  # logger name
    "logs": False,  # enable the rotating text log in log_dir
    "log_dir": "logs/",  # directory for text logs
    "verbose": False,  # stream log records at DEBUG instead of WARNING
    "sentry": False,  # enable sentry.io error tracking
    "sentry_dsn_env": "SENTRY_FAIRSUM_DSN",  # name of environment variable containing the sentry dsn
    "workers": None,  # worker processes for sweeps and checks, None for os.cpu_count()
    "workers_env": "FAIRSUM_WORKERS",  # name of environment variable overriding the worker count
    "oracle_size_guard": 2 ** 24,  # max assignment states the brute force oracle will enumerate
    "sqrt_precision": 10 ** 12,  # denominator of the rational enclosure used for square roots
    "tightness_slack": 10,  # worst case sweep points count as tight within tightness_slack / scale, scale being the denominator of eps
}

options: Dict[str, Any] = dict(optional)


class ConfigError(Exception):
    def __init__(
        self, message="An error occurred in the config process."
    ):  # pylint: disable=useless-super-delegation
        super().__init__(message)
