import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from tqdm import tqdm

from .._version import VERSION
from ..analysis.matrix import DistanceMatrix, compute_matrix, write_matrix
from ..analysis.neighbors import TIE_RULE, NNGraph, graph_change, nn_graph
from ..config.config import (
    DEFAULT_SCHEDULE,
    BandSpec,
    GroundCost,
    MatchSpec,
    MeasureConfig,
    format_percent,
    resolve_threads,
)
from ..data.series import Dataset
from ..measures.constraints import ROUNDING_RULE, resolve_band
from ..utils.environment import host_descriptor

logger = logging.getLogger(__name__)

Family = Literal["dtw", "lcs"]


@dataclass(frozen=True)
class SweepRow:
    percent: float | None
    radius: int | None
    wall_ms: float
    change_percent: float
    pair_count: int
    cell_count: int = 0

    @property
    def label(self) -> str:
        return format_percent(self.percent)


@dataclass(frozen=True)
class SweepReport:
    dataset_name: str
    family: Family
    config: MeasureConfig
    rows: tuple[SweepRow, ...]
    reference_fingerprint: str
    environment: dict[str, Any] = field(default_factory=dict)

    @property
    def reference(self) -> SweepRow:
        return self.rows[0]

    def change_at(self, percent: float | None) -> float:
        for row in self.rows:
            if row.percent == percent:
                return row.change_percent
        raise KeyError(f"no row for {format_percent(percent)} in the {self.dataset_name} sweep")

    def to_dict(self) -> dict[str, Any]:
        return {
            "dataset": self.dataset_name,
            "family": self.family,
            "config": self.config.model_dump(mode="json"),
            "reference_fingerprint": self.reference_fingerprint,
            "environment": self.environment,
            "rows": [
                {
                    "percent": row.label,
                    "radius": row.radius,
                    "wall_ms": row.wall_ms,
                    "change_percent": row.change_percent,
                    "pair_count": row.pair_count,
                    "cell_count": row.cell_count,
                }
                for row in self.rows
            ],
        }


def family_config(family: str, params: GroundCost | MatchSpec | None = None) -> MeasureConfig:
    """Unconstrained measure of a sweep family with its cost or match parameters."""
    if family == "dtw":
        if params is not None and not isinstance(params, GroundCost):
            raise ValueError("the dtw family takes a GroundCost")
        return MeasureConfig(measure="dtw", cost=params or GroundCost())
    if family == "lcs":
        if params is not None and not isinstance(params, MatchSpec):
            raise ValueError("the lcs family takes a MatchSpec")
        return MeasureConfig(measure="lcs", match=params or MatchSpec())
    raise ValueError(f"constraint sweeps support dtw and lcs, not {family!r}")


def _reference_radius(dataset: Dataset, band: BandSpec) -> int | None:
    longest = max(dataset.lengths)
    return resolve_band(band, longest, longest).radius


def constraint_sweep(
    dataset: Dataset,
    family: str,
    params: GroundCost | MatchSpec | None = None,
    schedule: Sequence[float] = DEFAULT_SCHEDULE,
    parallelism: int | str | None = "auto",
    repeat: int = 1,
    timing: bool = True,
    matrix_dir: Path | None = None,
    progress: bool = False,
    run_hash: str = "",
) -> SweepReport:
    """
    Compare 1NN graphs of banded measures against the unconstrained measure.

    The unconstrained matrix and graph come first; each schedule percent then gets its own
    matrix, wall-clock time and graph-change percentage. With ``timing`` enabled entries run
    one after another (each may still use ``parallelism`` threads internally); without it
    they run concurrently and their ``wall_ms`` are not comparable.

    Args:
        dataset (Dataset): Dataset with at least two series.
        family (str): ``"dtw"`` or ``"lcs"``.
        params: ``GroundCost`` for dtw, ``MatchSpec`` for lcs.
        schedule: Band percentages, widest first by convention.
        parallelism: Threads for matrix computation.
        repeat (int): Timed runs per matrix (median is reported).
        timing (bool): Keep entries sequential so their timings are meaningful.
        matrix_dir (Path | None): If given, every matrix is written there.
        progress (bool): Show tqdm bars.
        run_hash (str): Run configuration hash stored in matrices and the report.

    Returns:
        SweepReport: Reference row first, then one row per schedule entry.
    """
    base = family_config(family, params)
    threads = resolve_threads(parallelism)
    schedule = [float(p) for p in schedule]
    for percent in schedule:
        BandSpec(percent=percent)

    def run(band: BandSpec, inner_threads: int) -> DistanceMatrix:
        matrix = compute_matrix(
            dataset,
            base.with_band(band),
            parallelism=inner_threads,
            repeat=repeat,
            progress=progress and timing,
            run_hash=run_hash,
        )
        if matrix_dir is not None:
            write_matrix(matrix, Path(matrix_dir) / matrix_file_name(dataset.name, family, band))
        return matrix

    logger.info(f"Sweeping {dataset.name} with {family}: reference + {len(schedule)} constraints")
    reference_matrix = run(BandSpec.unconstrained(), threads)
    reference = nn_graph(reference_matrix)

    bands = [BandSpec(percent=p) for p in schedule]
    if timing:
        matrices = [
            run(band, threads)
            for band in tqdm(bands, desc=f"{dataset.name} {family} sweep", disable=not progress)
        ]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, max(1, len(bands)))) as executor:
            matrices = list(executor.map(lambda band: run(band, 1), bands))

    rows = [_row(reference_matrix, reference, reference, None)]
    for band, matrix in zip(bands, matrices, strict=True):
        rows.append(_row(matrix, nn_graph(matrix), reference, _reference_radius(dataset, band)))
        logger.info(
            f"{dataset.name} {family} {matrix.config.band.label}%: "
            f"change {rows[-1].change_percent:.3f}% in {matrix.timing.wall_ms:.3f} ms"
        )

    environment = {
        "host": host_descriptor(),
        "threads": threads,
        "repeat": repeat,
        "timed_sequentially": timing,
        "config_hash": base.fingerprint(),
        "run_hash": run_hash,
        "rounding_rule": ROUNDING_RULE,
        "tie_rule": TIE_RULE,
        "normalized": dataset.normalized,
        "dataset": dataset.summary(),
        "version": VERSION,
    }
    if bands and not dataset.equal_length:
        environment["warnings"] = [
            "unequal series lengths: bands follow the scaled diagonal and are widened to "
            "|n - m| where needed"
        ]

    return SweepReport(
        dataset_name=dataset.name,
        family=family,  # type: ignore[arg-type]
        config=base,
        rows=tuple(rows),
        reference_fingerprint=reference.fingerprint(),
        environment=environment,
    )


def _row(
    matrix: DistanceMatrix, graph: NNGraph, reference: NNGraph, radius: int | None
) -> SweepRow:
    return SweepRow(
        percent=matrix.config.band.percent,
        radius=radius,
        wall_ms=matrix.timing.wall_ms,
        change_percent=graph_change(graph, reference),
        pair_count=matrix.timing.pair_count,
        cell_count=matrix.timing.cell_count,
    )


def matrix_file_name(dataset_name: str, measure: str, band: BandSpec) -> str:
    return f"{dataset_name}_{measure}_{band.label}.ebmx"
