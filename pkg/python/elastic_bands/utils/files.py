import logging
import os
import shutil
import tempfile
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

logger = logging.getLogger(__name__)


@contextmanager
def atomic_output(output_path: Path) -> Iterator[Path]:
    """Yield a temporary sibling of ``output_path``, moved into place only on success."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    temp_output_path = output_path.with_name(f".{output_path.name}.{os.getpid()}.tmp")
    try:
        yield temp_output_path
        os.replace(temp_output_path, output_path)
        logger.debug(f"Wrote {output_path}")
    finally:
        if temp_output_path.exists():
            try:
                temp_output_path.unlink()
            except OSError as e:
                logger.warning(f"Failed to delete temporary file {temp_output_path}: {e!s}")


@contextmanager
def staged_output(output_dir: Path) -> Iterator[Path]:
    """
    Yield a hidden staging directory inside ``output_dir``.

    Everything written there is moved into ``output_dir`` (keeping subdirectories) only when
    the block succeeds; the staging directory is removed either way.
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    stage = Path(tempfile.mkdtemp(prefix=".staging-", dir=output_dir))
    try:
        yield stage
        for path in sorted(stage.rglob("*")):
            if path.is_dir():
                continue
            target = output_dir / path.relative_to(stage)
            target.parent.mkdir(parents=True, exist_ok=True)
            os.replace(path, target)
        logger.debug(f"Committed staged outputs to {output_dir}")
    finally:
        shutil.rmtree(stage, ignore_errors=True)
