import logging

from ..data.series import Dataset


class LengthMismatchError(ValueError):
    """Two series that must be aligned point by point have different lengths."""

    def __init__(self, n: int, m: int, context: str = "") -> None:
        self.n = n
        self.m = m
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}length mismatch, {n} != {m}")


def check_min_series(dataset: Dataset, minimum: int = 2) -> None:
    """
    Check that the dataset holds enough series for a pairwise computation.

    Raises:
        ValueError: If the dataset has fewer than ``minimum`` series.
    """
    if len(dataset) < minimum:
        raise ValueError(
            f"dataset {dataset.name} has {len(dataset)} series, at least {minimum} are required"
        )


def check_equal_lengths(dataset: Dataset) -> None:
    """
    Check that every series has the length of the first one.

    Raises:
        LengthMismatchError: Naming the first series whose length differs.
    """
    if not dataset.series:
        return
    first = dataset.series[0]
    for s in dataset.series[1:]:
        if len(s) != len(first):
            raise LengthMismatchError(
                len(first), len(s), f"dataset {dataset.name}, pair ({first.id}, {s.id})"
            )


def report_dataset(dataset: Dataset, logger: logging.Logger | None = None) -> None:
    """Log the shape of a loaded dataset and warn about properties that affect the experiments."""
    summary = dataset.summary()
    log_message(
        logger,
        f"Dataset {dataset.name}: {summary['series_count']} series, "
        f"lengths {summary['min_length']}..{summary['max_length']}, "
        f"{summary['class_count']} classes, normalized={dataset.normalized}",
        "info",
    )
    if not dataset.equal_length:
        log_message(
            logger,
            f"Dataset {dataset.name} has unequal lengths; bands follow the scaled diagonal "
            "and euclidean is unavailable",
            "warning",
        )
    if len(dataset) < 2:
        log_message(logger, f"Dataset {dataset.name} is too small for pairwise analysis", "warning")


def log_message(logger: logging.Logger | None, message: str, level: str = "info") -> None:
    """
    Logs a message using either the provided logger or the module logger.

    Args:
        logger (Optional[logging.Logger]): Logger to use for logging messages.
        message (str): The message to log.
        level (str): The logging level ('debug', 'info', 'warning', 'error').
    """
    if logger is None:
        logger = logging.getLogger(__name__)

    log_func = getattr(logger, level, logger.info)
    log_func(message)
