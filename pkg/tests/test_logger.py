"""Tests for logger module."""

import json

from src.utils.logger import get_logger, setup_logger


def test_logger_setup():
    """Test logger setup."""
    setup_logger(log_level="INFO")
    logger = get_logger()
    assert logger is not None

    logger.info("Test log message")


def test_logger_file_output(tmp_path):
    """Test logger file output."""
    log_file = tmp_path / "test.log"
    setup_logger(log_level="DEBUG", log_file=log_file)
    logger = get_logger("holonomy")

    logger.info("Test message to file")

    assert log_file.exists()
    setup_logger(log_level="WARNING")


def test_logger_keeps_stdout_clean(capsys):
    """Логи идут в stderr, stdout остаётся для JSON."""
    setup_logger(log_level="INFO")
    get_logger().info("only on stderr")
    captured = capsys.readouterr()
    assert captured.out == ""
    setup_logger(log_level="WARNING")


def test_logger_json_records(capsys):
    """serialize=True пишет по одной JSON-записи на строку."""
    setup_logger(log_level="INFO", serialize=True)
    get_logger("transport").info("step halved")
    lines = [line for line in capsys.readouterr().err.splitlines() if line.strip()]
    record = json.loads(lines[-1])
    assert record["record"]["message"] == "step halved"
    assert record["record"]["extra"]["component"] == "transport"
    setup_logger(log_level="WARNING")
