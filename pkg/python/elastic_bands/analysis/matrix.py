import hashlib
import json
import logging
import math
import statistics
import struct
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict
from tqdm import tqdm

from ..config.config import MeasureConfig, resolve_threads
from ..data.series import Dataset, FloatArray
from ..data.validation import check_equal_lengths, check_min_series
from ..measures.constraints import band_cell_count, resolve_band
from ..measures.core import measure, warm_up_kernels
from ..utils.environment import host_descriptor
from ..utils.files import atomic_output

logger = logging.getLogger(__name__)

MAGIC = b"EBMX"
FORMAT_VERSION = 1
_PREFIX = struct.Struct("<4sHI")
_DIGEST_SIZE = hashlib.sha256().digest_size

Pair = tuple[int, int]


class MatrixFormatError(ValueError):
    """The file is not a matrix container this version can read."""


class MatrixVersionError(MatrixFormatError):
    pass


class MatrixChecksumError(MatrixFormatError):
    pass


class TimingRecord(BaseModel):
    wall_ms: float
    pair_count: int
    threads: int
    host: str
    repeats: int = 1
    samples_ms: list[float] = []
    cell_count: int = 0

    model_config = ConfigDict(frozen=True)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    dataset_name: str
    config: MeasureConfig
    values: FloatArray
    timing: TimingRecord
    symmetric: bool = True
    run_hash: str = ""

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {values.shape}")
        if np.any(np.diag(values) != 0.0):
            raise ValueError("distance matrix diagonal must be zero")
        if self.symmetric and not np.array_equal(values, values.T):
            raise ValueError("matrix marked symmetric differs from its transpose")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def size(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return (
            self.dataset_name == other.dataset_name
            and self.config == other.config
            and self.timing == other.timing
            and self.symmetric == other.symmetric
            and self.run_hash == other.run_hash
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]


def matrix_pairs(size: int, symmetric: bool) -> list[Pair]:
    """Row-major pairs to evaluate: the upper triangle, or every off-diagonal cell."""
    if symmetric:
        return [(i, j) for i in range(size) for j in range(i + 1, size)]
    return [(i, j) for i in range(size) for j in range(size) if i != j]


def chunk_pairs(pairs: Sequence[Pair], threads: int) -> list[Sequence[Pair]]:
    if not pairs:
        return []
    chunk_size = max(1, math.ceil(len(pairs) / (threads * 8)))
    return [pairs[k : k + chunk_size] for k in range(0, len(pairs), chunk_size)]


def _evaluate_chunk(
    dataset: Dataset, config: MeasureConfig, chunk: Sequence[Pair]
) -> list[tuple[int, int, float]]:
    series = dataset.series
    return [(i, j, measure(series[i], series[j], config)) for i, j in chunk]


def _evaluate(
    dataset: Dataset,
    config: MeasureConfig,
    pairs: Sequence[Pair],
    threads: int,
    progress: bool,
) -> FloatArray:
    size = len(dataset)
    values = np.zeros((size, size), dtype=np.float64)
    chunks = chunk_pairs(pairs, threads)
    desc = f"{dataset.name} {config.measure} {config.band.label}"

    with tqdm(total=len(pairs), desc=desc, disable=not progress, leave=False) as pbar:
        if threads == 1:
            results = (_evaluate_chunk(dataset, config, chunk) for chunk in chunks)
            for result in results:
                for i, j, v in result:
                    values[i, j] = v
                pbar.update(len(result))
        else:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                futures = [
                    executor.submit(_evaluate_chunk, dataset, config, chunk) for chunk in chunks
                ]
                for future in as_completed(futures):
                    result = future.result()
                    for i, j, v in result:
                        values[i, j] = v
                    pbar.update(len(result))

    if config.symmetric:
        upper = np.triu_indices(size, k=1)
        values[(upper[1], upper[0])] = values[upper]
    return values


def band_cells(dataset: Dataset, config: MeasureConfig, pairs: Sequence[Pair]) -> int:
    """
    DP cells inside the band summed over the evaluated pairs (``n`` per pair for euclidean).

    Bands that had to be widened to ``|n - m|`` are reported once for the whole matrix.
    """
    lengths = dataset.lengths
    if config.measure == "euclidean":
        return sum(lengths[i] for i, _ in pairs)

    per_shape: dict[tuple[int, int], tuple[int, bool]] = {}
    total = 0
    widened = 0
    for i, j in pairs:
        shape = (lengths[i], lengths[j])
        if shape not in per_shape:
            band = resolve_band(config.band, *shape, warn=False)
            per_shape[shape] = (band_cell_count(band), band.widened)
        cells, was_widened = per_shape[shape]
        total += cells
        widened += was_widened
    if widened:
        logger.warning(
            f"{dataset.name}: band {config.band.label}% widened to |n - m| "
            f"for {widened} of {len(pairs)} pairs"
        )
    return total


def compute_matrix(
    dataset: Dataset,
    config: MeasureConfig,
    parallelism: int | str | None = "auto",
    repeat: int = 1,
    warmup: bool = False,
    progress: bool = False,
    run_hash: str = "",
) -> DistanceMatrix:
    """
    Compute the pairwise distance matrix of a dataset under one measure configuration.

    Symmetric measures evaluate the upper triangle and mirror it; relative-mode LCS
    evaluates every off-diagonal cell. Pairs are spread over a thread pool in row-major
    chunks; the kernels release the GIL.

    Args:
        dataset (Dataset): At least two series; equal lengths for euclidean.
        config (MeasureConfig): Measure, band, cost and match parameters.
        parallelism: Worker count, ``"auto"``, or ``None`` for the environment default.
        repeat (int): Number of timed runs; ``wall_ms`` is their median.
        warmup (bool): Run one untimed pass first.
        progress (bool): Show a tqdm bar over pairs.
        run_hash (str): Hash of the run configuration, stored in the result.

    Returns:
        DistanceMatrix: Values are identical for any parallelism.
    """
    check_min_series(dataset)
    if config.measure == "euclidean":
        check_equal_lengths(dataset)
    if repeat < 1:
        raise ValueError(f"repeat must be at least 1, got {repeat}")

    threads = resolve_threads(parallelism)
    pairs = matrix_pairs(len(dataset), config.symmetric)
    if not config.symmetric:
        logger.info("Relative LCS matching is asymmetric; evaluating both triangles")

    warm_up_kernels()
    if warmup:
        _evaluate(dataset, config, pairs, threads, progress=False)

    samples: list[float] = []
    values: FloatArray | None = None
    for _ in range(repeat):
        start = time.perf_counter()
        values = _evaluate(dataset, config, pairs, threads, progress)
        samples.append((time.perf_counter() - start) * 1000.0)
    assert values is not None

    timing = TimingRecord(
        wall_ms=statistics.median(samples),
        pair_count=len(pairs),
        threads=threads,
        host=host_descriptor(),
        repeats=repeat,
        samples_ms=samples,
        cell_count=band_cells(dataset, config, pairs),
    )
    logger.info(
        f"{dataset.name} {config.measure} band={config.band.label}: "
        f"{timing.pair_count} pairs ({timing.cell_count} cells) in {timing.wall_ms:.3f} ms "
        f"on {threads} thread(s)"
    )
    return DistanceMatrix(
        dataset_name=dataset.name,
        config=config,
        values=values,
        timing=timing,
        symmetric=config.symmetric,
        run_hash=run_hash,
    )


def _header(m: DistanceMatrix) -> dict[str, Any]:
    return {
        "dataset_name": m.dataset_name,
        "size": m.size,
        "symmetric": m.symmetric,
        "run_hash": m.run_hash,
        "config": m.config.model_dump(mode="json"),
        "timing": m.timing.model_dump(mode="json"),
    }


def _payload(m: DistanceMatrix) -> FloatArray:
    if m.symmetric:
        return m.values[np.triu_indices(m.size, k=1)]
    return m.values.ravel()


def write_matrix(m: DistanceMatrix, path: str | Path) -> Path:
    """
    Persist a matrix: magic, version, JSON header, little-endian float64 payload, SHA-256.

    Symmetric matrices store their upper triangle row by row, others the full matrix.
    """
    path = Path(path)
    header = json.dumps(_header(m), sort_keys=True).encode("utf-8")
    body = (
        _PREFIX.pack(MAGIC, FORMAT_VERSION, len(header))
        + header
        + np.ascontiguousarray(_payload(m), dtype="<f8").tobytes()
    )
    with atomic_output(path) as temp_path:
        temp_path.write_bytes(body + hashlib.sha256(body).digest())
    logger.info(f"Saved {m.size}x{m.size} matrix to {path}")
    return path


def read_matrix(path: str | Path) -> DistanceMatrix:
    path = Path(path)
    data = path.read_bytes()
    if len(data) < _PREFIX.size:
        raise MatrixChecksumError(f"{path}: truncated ({len(data)} bytes)")

    magic, version, header_len = _PREFIX.unpack_from(data)
    if magic != MAGIC:
        raise MatrixFormatError(f"{path}: not a matrix file (magic {magic!r})")
    if version != FORMAT_VERSION:
        raise MatrixVersionError(
            f"{path}: format version {version}, this reader supports {FORMAT_VERSION}"
        )
    if len(data) < _PREFIX.size + header_len + _DIGEST_SIZE:
        raise MatrixChecksumError(f"{path}: truncated ({len(data)} bytes)")

    body, digest = data[:-_DIGEST_SIZE], data[-_DIGEST_SIZE:]
    if hashlib.sha256(body).digest() != digest:
        raise MatrixChecksumError(f"{path}: checksum mismatch")

    header_end = _PREFIX.size + header_len
    header = json.loads(body[_PREFIX.size : header_end].decode("utf-8"))
    payload_bytes = len(body) - header_end
    if payload_bytes % 8:
        raise MatrixFormatError(
            f"{path}: payload of {payload_bytes} bytes is not a whole number of float64 values"
        )
    payload = np.frombuffer(body[header_end:], dtype="<f8").astype(np.float64)

    size = int(header["size"])
    symmetric = bool(header["symmetric"])
    values = np.zeros((size, size), dtype=np.float64)
    if symmetric:
        expected = size * (size - 1) // 2
        if payload.size != expected:
            raise MatrixFormatError(f"{path}: expected {expected} values, found {payload.size}")
        upper = np.triu_indices(size, k=1)
        values[upper] = payload
        values[(upper[1], upper[0])] = payload
    else:
        if payload.size != size * size:
            raise MatrixFormatError(
                f"{path}: expected {size * size} values, found {payload.size}"
            )
        values = payload.reshape(size, size)

    return DistanceMatrix(
        dataset_name=header["dataset_name"],
        config=MeasureConfig.model_validate(header["config"]),
        values=values,
        timing=TimingRecord.model_validate(header["timing"]),
        symmetric=symmetric,
        run_hash=header.get("run_hash", ""),
    )


def export_matrix_csv(m: DistanceMatrix, path: str | Path) -> Path:
    """CSV export: header ``id,0,1,...,N-1`` and one full-precision row per series."""
    path = Path(path)
    frame = pl.DataFrame(
        {"id": np.arange(m.size), **{str(j): m.values[:, j] for j in range(m.size)}}
    )
    with atomic_output(path) as temp_path:
        frame.write_csv(temp_path)
    return path
