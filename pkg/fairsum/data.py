# data.py | logging, error tracking and the shared error type
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

import logging
import logging.handlers
import os
import sys

import sentry_sdk

from fairsum import config

logger = logging.getLogger(config.options["name"])


class GenericError(Exception):
    """A custom error class.

    Error codes: (can add more if needed)\n
        0 - no code
        100 - Blank
        300 - Oracle size guard exceeded
        400 - Stale frontier entry
        500 - Degenerate value
        990 - Invalid Input
        991 - Out of range
        992 - Non-integer scaled weight
    """

    def __init__(self, message=None, code=0):
        self.code = code
        super().__init__(message)


# Error codes: (can add more if needed)
# 0 - no code
# 100 - Blank
# 300 - Oracle size guard exceeded
# 400 - Stale frontier entry
# 500 - Degenerate value
# 990 - Invalid Input
# 991 - Out of range
# 992 - Non-integer scaled weight


def before_sentry_send(event, hint):
    """Fingerprint certain events before sending to Sentry."""
    if "exc_info" in hint:
        error = hint["exc_info"][1]
        if isinstance(error, GenericError):
            event["fingerprint"] = ["generic-error", str(error.code)]
    return event


def setup_sentry():
    if not config.options["sentry"]:
        return
    if config.options["sentry_dsn_env"] is None:
        raise config.ConfigError("sentry_dsn_env must be set if sentry is True")
    sentry_sdk.init(
        dsn=os.getenv(config.options["sentry_dsn_env"]),
        before_send=before_sentry_send,
        traces_sample_rate=0.0,
    )


_handlers = []


def setup_logging():
    """Attaches the stream (and optional file) handlers. Safe to call twice."""
    for handler in _handlers:
        logger.removeHandler(handler)
    _handlers.clear()

    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(
        logging.DEBUG if config.options["verbose"] else logging.WARNING
    )
    stream_handler.setFormatter(
        logging.Formatter("{filename:10} -  {levelname:8} - {message}", style="{")
    )
    _handlers.append(stream_handler)

    if config.options["logs"]:
        os.makedirs(config.options["log_dir"], exist_ok=True)
        file_handler = logging.handlers.TimedRotatingFileHandler(
            f"{config.options['log_dir']}log.txt", backupCount=4, when="midnight"
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter(
                "{asctime} - {filename:10} -  {levelname:8} - {message}", style="{"
            )
        )
        _handlers.append(file_handler)

    logger.setLevel(logging.DEBUG)
    for handler in _handlers:
        logger.addHandler(handler)

    # log uncaught exceptions
    def handle_exception(exc_type, exc_value, exc_traceback):
        if issubclass(exc_type, KeyboardInterrupt):
            sys.__excepthook__(exc_type, exc_value, exc_traceback)
            return

        logger.critical(
            "Uncaught exception", exc_info=(exc_type, exc_value, exc_traceback)
        )

    sys.excepthook = handle_exception
