import logging
from collections.abc import Callable, Iterator, Sequence
from pathlib import Path

import numpy as np
import pytest

WriteUCR = Callable[..., Path]


@pytest.fixture(autouse=True)
def reset_package_logger() -> Iterator[None]:
    # the CLI attaches a handler bound to the current stderr; drop it between tests
    yield
    logger = logging.getLogger("elastic_bands")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.propagate = True
    logger.setLevel(logging.NOTSET)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240517)


@pytest.fixture
def write_ucr_file(tmp_path: Path) -> WriteUCR:
    """Write rows ``[label, v1, v2, ...]`` to a UCR text file under ``tmp_path``."""

    def write(name: str, rows: Sequence[Sequence[float]], delimiter: str = ",") -> Path:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [delimiter.join(repr(float(v)) for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return write
