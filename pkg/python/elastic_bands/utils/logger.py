import logging
import sys
from logging import LogRecord
from typing import ClassVar

from colorama import Back, Fore, Style, init

# Initialize colorama
init(autoreset=True)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class ColoredFormatter(logging.Formatter):
    COLORS: ClassVar[dict[str, str]] = {
        "DEBUG": Fore.CYAN,
        "INFO": Fore.GREEN,
        "WARNING": Fore.YELLOW,
        "ERROR": Fore.RED,
        "CRITICAL": Fore.RED + Back.WHITE + Style.BRIGHT,
    }

    def format(self, record: LogRecord) -> str:
        log_message = super().format(record)
        return f"{self.COLORS.get(record.levelname, '')}{log_message}{Style.RESET_ALL}"


def setup_colored_logger(name: str, level: str | int = logging.INFO) -> logging.Logger:
    """Attach one colored stderr handler to ``name``; repeated calls only update the level."""
    logger = logging.getLogger(name)
    logger.setLevel(level)

    handler = next(
        (h for h in logger.handlers if isinstance(h.formatter, ColoredFormatter)), None
    )
    if handler is None:
        # stderr keeps stdout free for machine-readable results
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(ColoredFormatter(LOG_FORMAT))
        logger.addHandler(handler)
        logger.propagate = False
    handler.setLevel(level)

    return logger
