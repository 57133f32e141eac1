import logging

import pytest

import fairsum
from fairsum import config
from fairsum.data import GenericError, before_sentry_send, logger, setup_logging


def test_setup_sets_known_options():
    fairsum.setup(verbose=True, workers=3)
    assert config.options["verbose"] is True
    assert config.options["workers"] == 3


def test_setup_accepts_dict():
    fairsum.setup({"oracle_size_guard": 100})
    assert config.options["oracle_size_guard"] == 100


def test_setup_rejects_unknown_option():
    with pytest.raises(config.ConfigError):
        fairsum.setup(colour="blue")


@pytest.mark.parametrize(
    "options",
    [{"workers": 0}, {"workers": "4"}, {"sqrt_precision": 0}, {"tightness_slack": -1}],
)
def test_setup_validates_values(options):
    with pytest.raises(config.ConfigError):
        fairsum.setup(**options)


def test_log_dir_gets_trailing_slash():
    fairsum.setup(log_dir="somewhere")
    assert config.options["log_dir"] == "somewhere/"


def test_reset_restores_defaults():
    fairsum.setup(verbose=True)
    fairsum.reset()
    assert config.options == config.optional


def test_setup_logging_is_idempotent():
    setup_logging()
    count = len(logger.handlers)
    setup_logging()
    assert len(logger.handlers) == count


def test_verbose_stream_handler_level():
    fairsum.setup(verbose=True)
    setup_logging()
    levels = [h.level for h in logger.handlers if type(h) is logging.StreamHandler]
    assert levels == [logging.DEBUG]


def test_file_log(tmp_path):
    fairsum.setup(logs=True, log_dir=str(tmp_path))
    setup_logging()
    logger.info("hello")
    for handler in logger.handlers:
        handler.flush()
    assert "hello" in (tmp_path / "log.txt").read_text()
    fairsum.setup(logs=False)
    setup_logging()


def test_generic_error_keeps_code():
    error = GenericError("boom", 300)
    assert error.code == 300
    assert str(error) == "boom"
    assert GenericError().code == 0


def test_sentry_fingerprint_uses_code():
    error = GenericError("boom", 400)
    event = before_sentry_send({}, {"exc_info": (GenericError, error, None)})
    assert event["fingerprint"] == ["generic-error", "400"]
    assert before_sentry_send({"a": 1}, {}) == {"a": 1}
