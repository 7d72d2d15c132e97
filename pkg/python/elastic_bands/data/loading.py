import logging
import math
import re
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from ..data.series import Dataset, TimeSeries
from ..data.transformation import normalize_dataset
from ..data.validation import report_dataset
from ..utils.files import atomic_output

logger = logging.getLogger(__name__)

_SPLIT_SUFFIX = re.compile(r"_(TRAIN|TEST)$", re.IGNORECASE)


class UCRFormatError(ValueError):
    """A line of a UCR file could not be parsed."""

    def __init__(self, path: Path | str, line: int, message: str, column: int | None = None):
        self.path = str(path)
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{path}: {where}: {message}")


def dataset_name(path: Path) -> str:
    """``Coffee_TRAIN.tsv`` and ``Coffee_TEST`` both name the ``Coffee`` dataset."""
    return _SPLIT_SUFFIX.sub("", path.stem if path.suffix else path.name)


def parse_ucr_line(line: str, line_no: int, path: Path | str = "<text>") -> tuple[int, list[float]]:
    fields = [f.strip() for f in line.split(",")] if "," in line else line.split()
    while fields and fields[-1] == "":
        fields.pop()
    if len(fields) < 2:
        raise UCRFormatError(
            path, line_no, f"expected a label and at least one sample, got {len(fields)} field(s)"
        )

    numbers: list[float] = []
    for column, field in enumerate(fields, 1):
        try:
            numbers.append(float(field))
        except ValueError:
            raise UCRFormatError(path, line_no, f"non-numeric field {field!r}", column) from None

    label = numbers[0]
    if not math.isfinite(label):
        raise UCRFormatError(path, line_no, f"label {fields[0]!r} is not finite", 1)

    samples = numbers[1:]
    # variable-length datasets pad the tail with NaN
    while samples and math.isnan(samples[-1]):
        samples.pop()
    if not samples:
        raise UCRFormatError(path, line_no, "no samples after removing NaN padding")
    for column, value in enumerate(samples, 2):
        if not math.isfinite(value):
            raise UCRFormatError(path, line_no, f"non-finite sample {fields[column - 1]!r}", column)

    return int(label), samples


def load_ucr(path: str | Path) -> Dataset:
    """
    Load one UCR-format text file: one series per line, class label first.

    Fields are comma separated when the line contains a comma, whitespace separated
    otherwise. Labels such as ``1.0000000e+00`` are truncated to integers.

    Args:
        path (str | Path): File to read.

    Returns:
        Dataset: Series with ids ``0..N-1`` in file order, not normalized.

    Raises:
        FileNotFoundError: If the file does not exist.
        UCRFormatError: On malformed lines, reported with line and column.
    """
    path = Path(path)
    logger.info(f"Loading file: {path}")
    if not path.is_file():
        raise FileNotFoundError(f"UCR file not found: {path}")

    series: list[TimeSeries] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, 1):
            if not line.strip():
                continue
            label, samples = parse_ucr_line(line, line_no, path)
            series.append(
                TimeSeries(
                    label=label, values=np.asarray(samples, dtype=np.float64), id=len(series)
                )
            )

    logger.debug(f"Parsed {len(series)} series from {path}")
    return Dataset(name=dataset_name(path), series=tuple(series), source_path=str(path))


def archive_files(directory: Path) -> list[Path]:
    """The ``<Name>_TRAIN*`` then ``<Name>_TEST*`` files of a UCR archive directory."""
    files: list[Path] = []
    for split in ("TRAIN", "TEST"):
        matches = sorted(p for p in directory.glob(f"{directory.name}_{split}*") if p.is_file())
        if not matches:
            matches = sorted(p for p in directory.glob(f"*_{split}*") if p.is_file())
        files.extend(matches)
    if not files:
        raise FileNotFoundError(f"No *_TRAIN/*_TEST files found in {directory}")
    return files


def merge_datasets(datasets: Sequence[Dataset], name: str | None = None) -> Dataset:
    """Concatenate datasets in order, re-assigning dense ids."""
    if not datasets:
        raise ValueError("nothing to merge")
    if len(datasets) == 1 and name is None:
        return datasets[0]
    series = [s for d in datasets for s in d.series]
    return Dataset(
        name=name or datasets[0].name,
        series=tuple(s.with_id(i) for i, s in enumerate(series)),
        source_path=";".join(d.source_path for d in datasets),
        normalized=all(d.normalized for d in datasets),
    )


def load_dataset(
    paths: str | Path | Iterable[str | Path], normalize: bool = False, name: str | None = None
) -> Dataset:
    """
    Load a dataset from UCR files or an archive directory.

    A directory ``Coffee/`` contributes its TRAIN split followed by its TEST split, so the
    merged set holds every labeled series. Several paths are concatenated in the order given.

    Args:
        paths: One path or several.
        normalize (bool): z-normalize every series after loading.
        name (str | None): Override for the dataset name.

    Returns:
        Dataset: Merged dataset with dense ids.
    """
    if isinstance(paths, str | Path):
        paths = [paths]

    files: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(archive_files(path))
        elif path.exists():
            files.append(path)
        else:
            raise FileNotFoundError(f"Dataset path not found: {path}")

    dataset = merge_datasets([load_ucr(f) for f in files], name=name)
    if normalize:
        dataset = normalize_dataset(dataset)
    report_dataset(dataset, logger)
    return dataset


def format_ucr_line(s: TimeSeries, delimiter: str = ",") -> str:
    return delimiter.join([str(s.label), *(repr(float(v)) for v in s.values)])


def write_ucr(dataset: Dataset, path: str | Path, delimiter: str = ",") -> Path:
    """Write a dataset back to UCR text with shortest round-trip float formatting."""
    if delimiter not in (",", "\t", " "):
        raise ValueError(f"unsupported delimiter {delimiter!r}")
    path = Path(path)
    with atomic_output(path) as temp_path, open(temp_path, "w", encoding="utf-8") as handle:
        for s in dataset.series:
            handle.write(format_ucr_line(s, delimiter) + "\n")
    logger.info(f"Saved {len(dataset)} series to {path}")
    return path
