import logging
import random
import sys
from types import FrameType
from typing import Any

from loguru import logger

SWEEP_LOGGER = "src.services.lab_service"


class InterceptHandler(logging.Handler):
    """
    Intercepts logs from standard logging and redirects them to loguru.

    :param:
        logging: The logging module
    """

    def emit(self, record: logging.LogRecord) -> None:
        """
        Emit a log record with loguru
        """
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Get caller from where originated the logged message
        frame: FrameType | None = logging.currentframe()
        depth = 2

        if frame:
            while frame.f_code.co_filename == logging.__file__:
                if frame.f_back:
                    frame = frame.f_back
                    depth += 1
                else:
                    break

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def make_sampler(sample_rate: float, module_levels: dict[str, str] | None = None):
    """
    Build a loguru filter that samples per-instance sweep debug records and
    applies module-specific minimum levels.

    :param sample_rate: Fraction of sweep DEBUG records to keep
    :param module_levels: Mapping of module name to minimum level name
    :return: Filter callable for ``logger.add``
    """
    thresholds = {
        module: logger.level(level).no for module, level in (module_levels or {}).items()
    }

    def should_log(record) -> bool:
        name = record["name"] or ""
        for module, threshold in thresholds.items():
            if name.startswith(module) and record["level"].no < threshold:
                return False

        # A sweep emits one debug record per instance
        if record["level"].name == "DEBUG" and name == SWEEP_LOGGER:
            return random.random() < sample_rate

        return True

    return should_log


def setup_logging(
    log_level: str = "INFO",
    json_format: bool = False,
    log_file: str | None = None,
    sample_rate: float = 1.0,
    module_levels: dict[str, str] | None = None,
) -> None:
    """
    Configure logging for the command line tools.

    Logs always go to stderr so that stdout stays machine-readable.

    :param:
        log_level: The minimum log level to capture
        json_format: Whether to output logs in JSON format
        log_file: Optional path of a rotating log file
        sample_rate: Fraction of per-instance sweep debug records to keep
        module_levels: Dictionary of module-specific log levels
    """
    # Remove default loguru handler
    logger.remove()

    if json_format:
        log_format = "{message}"
    else:
        log_format = (
            "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | "
            "<level>{level: <8}</level> | "
            "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
            "{message}"
        )

    should_log = make_sampler(sample_rate, module_levels)

    logger.add(
        sys.stderr,
        format=log_format,
        level=log_level,
        serialize=json_format,
        backtrace=False,
        diagnose=False,
        filter=should_log,
    )

    if log_file:
        logger.add(
            log_file,
            format=log_format,
            level=log_level,
            serialize=json_format,
            rotation="100 MB",
            retention="10 days",
            compression="zip",
            enqueue=True,
            filter=should_log,
        )

    # Intercept everything at the root logger
    logging.root.handlers = [InterceptHandler()]
    logging.root.setLevel(log_level)

    # Remove every other logger's handlers and propagate to root logger
    for name in logging.root.manager.loggerDict.keys():
        logging.getLogger(name).handlers = []
        logging.getLogger(name).propagate = True


def configure_logging(settings: Any, log_level: str | None = None) -> None:
    """
    Configure logging based on application settings.

    params:
        settings: Application settings instance
        log_level: Optional override coming from the command line
    """
    setup_logging(
        log_level=log_level or settings.LOG_LEVEL,
        json_format=settings.LOG_FORMAT == "json",
        log_file=settings.LOG_FILE,
        sample_rate=settings.LOG_SAMPLE_RATE,
        module_levels=settings.LOG_MODULE_LEVELS,
    )
