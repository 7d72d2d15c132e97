import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Literal

import polars as pl
import yaml
from rich.console import Console
from rich.table import Table

from ..analysis.sweep import SweepReport
from ..config.config import UNCONSTRAINED
from ..utils.files import atomic_output

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "dataset",
    "family",
    "percent",
    "radius",
    "wall_ms",
    "change_percent",
    "pair_count",
    "cell_count",
    "run_hash",
]

ReportValue = Literal["change_percent", "wall_ms"]
REPORT_VALUES: tuple[ReportValue, ...] = ("change_percent", "wall_ms")
REPORT_TITLES = {
    "change_percent": "Change of 1NN graph vs unconstrained measure",
    "wall_ms": "Distance matrix computation time (ms)",
}


def sweep_frame(report: SweepReport, run_hash: str = "") -> pl.DataFrame:
    return pl.DataFrame(
        {
            "dataset": [report.dataset_name] * len(report.rows),
            "family": [report.family] * len(report.rows),
            "percent": [row.label for row in report.rows],
            "radius": [row.radius for row in report.rows],
            "wall_ms": [row.wall_ms for row in report.rows],
            "change_percent": [row.change_percent for row in report.rows],
            "pair_count": [row.pair_count for row in report.rows],
            "cell_count": [row.cell_count for row in report.rows],
            "run_hash": [run_hash] * len(report.rows),
        },
        schema_overrides={"radius": pl.Int64},
    ).select(SWEEP_COLUMNS)


def write_sweep_csv(report: SweepReport, path: Path, run_hash: str = "") -> Path:
    with atomic_output(path) as temp_path:
        sweep_frame(report, run_hash).write_csv(temp_path)
    logger.info(f"Sweep table saved to {path}")
    return path


def write_sweep_yaml(
    report: SweepReport, path: Path, run_config: dict[str, Any] | None = None, run_hash: str = ""
) -> Path:
    document = {"run_hash": run_hash, "run_config": run_config or {}, **report.to_dict()}
    with atomic_output(path) as temp_path, open(temp_path, "w", encoding="utf-8") as handle:
        yaml.safe_dump(document, handle, sort_keys=False)
    logger.info(f"Sweep report saved to {path}")
    return path


def read_sweep_csv(path: Path) -> pl.DataFrame:
    frame = pl.read_csv(path, schema_overrides={"percent": pl.Utf8, "dataset": pl.Utf8})
    required = ("dataset", "family", "percent", "wall_ms", "change_percent")
    missing = [col for col in required if col not in frame.columns]
    if missing:
        raise ValueError(f"Missing required columns in {path}: {', '.join(missing)}")
    if "run_hash" not in frame.columns:
        frame = frame.with_columns(pl.lit("").alias("run_hash"))
    return frame.with_columns(pl.col("run_hash").cast(pl.Utf8).fill_null(""))


def merge_sweep_reports(
    paths: Sequence[Path], value: ReportValue = "change_percent"
) -> pl.DataFrame:
    """
    Merge sweep CSVs into one datasets x percents table.

    ``change_percent`` gives the 1NN graph change table; its unconstrained column is dropped
    since it is zero by construction. ``wall_ms`` gives matrix computation times and keeps
    the unconstrained column as the baseline. Each row carries the run hash of its sweep.
    """
    if value not in REPORT_VALUES:
        raise ValueError(f"report value must be one of {', '.join(REPORT_VALUES)}, not {value!r}")
    if not paths:
        raise ValueError("no sweep reports to merge")
    columns = ["dataset", "family", "percent", value, "run_hash"]
    merged = pl.concat([read_sweep_csv(Path(p)).select(columns) for p in paths])
    if value == "change_percent":
        merged = merged.filter(pl.col("percent") != UNCONSTRAINED)
    if merged.is_empty():
        raise ValueError("the sweep reports contain no constrained rows")
    table = merged.pivot(
        on="percent",
        index=["dataset", "family", "run_hash"],
        values=value,
        aggregate_function="first",
    ).sort(["family", "dataset"])
    return table.select(pl.exclude("run_hash"), pl.col("run_hash"))


def write_merged_report(table: pl.DataFrame, path: Path) -> Path:
    with atomic_output(path) as temp_path:
        table.write_csv(temp_path)
    logger.info(f"Merged report saved to {path}")
    return path


def print_report_table(
    table: pl.DataFrame, console: Console | None = None, value: ReportValue = "change_percent"
) -> None:
    console = console or Console()
    rich_table = Table(title=REPORT_TITLES[value])
    shown = [column for column in table.columns if column != "run_hash"]
    for column in shown:
        numeric = column not in ("dataset", "family")
        header = column if column == UNCONSTRAINED else f"{column}%"
        rich_table.add_column(
            header if numeric else column.capitalize(),
            justify="right" if numeric else "left",
            style="yellow" if numeric else "cyan",
        )
    unit = "%" if value == "change_percent" else ""
    for row in table.select(shown).iter_rows():
        rich_table.add_row(*(_cell(item, unit) for item in row))
    console.print(rich_table)


def _cell(value: Any, unit: str = "%") -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.3f}{unit}"
    return str(value)


def print_sweep_table(report: SweepReport, console: Console | None = None) -> None:
    console = console or Console()
    table = Table(title=f"{report.dataset_name} / {report.family}")
    table.add_column("Constraint", style="cyan")
    table.add_column("Radius", justify="right", style="magenta")
    table.add_column("Time (ms)", justify="right", style="green")
    table.add_column("1NN change", justify="right", style="yellow")
    for row in report.rows:
        table.add_row(
            row.label if row.percent is None else f"{row.label}%",
            "" if row.radius is None else str(row.radius),
            f"{row.wall_ms:.3f}",
            f"{row.change_percent:.3f}%",
        )
    console.print(table)
