import logging
import sys

from pythonjsonlogger import jsonlogger

from .settings import SETTINGS

JSON_FIELDS = '%(levelname)s %(asctime)s %(name)s %(funcName)s %(lineno)d %(message)s'
TEXT_FIELDS = '%(levelname)s %(asctime)s %(name)s: %(message)s'


def _formatter(kind: str) -> logging.Formatter:
    if kind == 'text':
        return logging.Formatter(TEXT_FIELDS, datefmt='%Y-%m-%d %H:%M:%S')
    return jsonlogger.JsonFormatter(fmt=JSON_FIELDS, datefmt='%Y-%m-%d %H:%M:%S', json_default=str)


def setup_logging(name: str = SETTINGS.app_name) -> logging.Logger:
    """Solver logger. Records go to stderr or LOG_FILE, never to stdout."""
    logging.getLogger().setLevel(SETTINGS.logging_level)

    solver_logger = logging.getLogger(name)
    solver_logger.setLevel(SETTINGS.app_logging_level)
    if solver_logger.handlers:
        return solver_logger

    if SETTINGS.log_file:
        handler = logging.FileHandler(SETTINGS.log_file, encoding='utf-8')
    else:
        handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_formatter(SETTINGS.log_format))
    solver_logger.addHandler(handler)
    solver_logger.propagate = False
    return solver_logger


logger = setup_logging()
