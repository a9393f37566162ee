import logging
import sys
from typing import Union

from loguru import logger

from cfevrp.settings import settings

LOG_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<magenta>{extra[instance]}</magenta> | "
    "<cyan>{name}</cyan> - <level>{message}</level>"
)


class InterceptHandler(logging.Handler):
    """
    Forwards stdlib ``logging`` records to loguru.

    Toolkit modules log through ``logging.getLogger(__name__)``; this handler
    keeps the original caller so ``{name}`` shows the toolkit module.
    """

    def emit(self, record: logging.LogRecord) -> None:  # pragma: no cover
        try:
            level: Union[str, int] = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        frame, depth = logging.currentframe(), 2
        while frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back  # type: ignore
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(
            level,
            record.getMessage(),
        )


def configure_logging(level: str | None = None) -> None:  # pragma: no cover
    """
    Route stdlib and uvicorn logging through loguru on stderr.

    Records carry the instance being processed (set with
    ``logger.contextualize(instance=...)``), ``-`` outside a run.

    :param level: overrides the level from settings (CLI ``--log-level``).
    """
    intercept_handler = InterceptHandler()
    logging.basicConfig(handlers=[intercept_handler], level=logging.NOTSET, force=True)

    for logger_name in logging.root.manager.loggerDict:
        if logger_name.startswith("uvicorn."):
            logging.getLogger(logger_name).handlers = []
    logging.getLogger("uvicorn").handlers = [intercept_handler]
    logging.getLogger("uvicorn.access").handlers = [intercept_handler]

    # schedules, tables and SMT-LIB2 go to stdout
    logger.remove()
    logger.configure(extra={"instance": "-"})
    logger.add(
        sys.stderr,
        level=level or settings.log_level.value,
        format=LOG_FORMAT,
    )
