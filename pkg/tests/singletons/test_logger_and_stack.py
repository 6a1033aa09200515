import logging
from concurrent.futures import ThreadPoolExecutor

from Singletons import Logger, Stack


def test_logger_level_and_file(tmp_path):
    log_file = tmp_path / "run.log"
    logger = Logger()
    logger.configure(level="debug", log_file=str(log_file))
    try:
        assert logger.get_log_level() == "DEBUG"
        logger.info("segment done")
        for handler in logger.get_logger().handlers:
            handler.flush()
        assert "segment done" in log_file.read_text(encoding="utf-8")
    finally:
        logger.configure(level="INFO")
    assert Logger().get_log_level() == "INFO"


def test_unknown_level_falls_back_to_info():
    assert Logger._translate_loglevel("chatty") == logging.INFO
    assert Logger._translate_loglevel(logging.WARNING) == logging.WARNING


def test_stack_is_shared_and_thread_safe():
    stack = Stack()
    stack.reset_all()
    assert Stack() is stack

    with ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(lambda _: Stack().add_counter("clicks_signal", 3), range(200)))
    assert stack.get_counter("clicks_signal") == 600
    assert stack.get_all() == {"clicks_signal": 600}
    stack.reset_all()
    assert stack.get_counter("clicks_signal") == 0
