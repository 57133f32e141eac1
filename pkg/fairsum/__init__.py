# __init__.py | package functions
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

import fairsum.config as config


def setup(*args, **kwargs):
    if len(args) == 1 and isinstance(args[0], dict):
        kwargs = args[0]

    for option, value in kwargs.items():
        if option not in config.optional:
            raise config.ConfigError(f"Unknown setup argument {option}")
        config.options[option] = value

    if config.options["log_dir"] and not config.options["log_dir"].endswith("/"):
        config.options["log_dir"] += "/"

    workers = config.options["workers"]
    if workers is not None and (not isinstance(workers, int) or workers < 1):
        raise config.ConfigError("workers must be a positive integer or None")

    for option in ("oracle_size_guard", "sqrt_precision", "tightness_slack"):
        if not isinstance(config.options[option], int) or config.options[option] < 1:
            raise config.ConfigError(f"{option} must be a positive integer")


def reset():
    """Restores every option to its default."""
    config.options.clear()
    config.options.update(config.optional)
