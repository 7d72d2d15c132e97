import argparse
import logging
import os
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from rich.console import Console

from ._version import VERSION
from .analysis.matrix import compute_matrix, export_matrix_csv, read_matrix, write_matrix
from .analysis.neighbors import DatasetMismatchError, graph_change, nn_graph
from .analysis.sweep import SweepReport, constraint_sweep, matrix_file_name
from .config.config import THREADS_ENV_VAR, RunConfig, format_percent, read_config_file
from .data.loading import load_dataset
from .data.series import Dataset
from .measures.constraints import resolve_band
from .measures.core import measure
from .utils.logger import setup_colored_logger
from .utils.files import staged_output
from .utils.pipeline import Pipeline
from .utils.reports import (
    REPORT_VALUES,
    merge_sweep_reports,
    print_report_table,
    print_sweep_table,
    write_merged_report,
    write_sweep_csv,
    write_sweep_yaml,
)

logger = logging.getLogger("elastic_bands")


def parse_percents(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        message = f"expected comma-separated numbers, got {text!r}"
        raise argparse.ArgumentTypeError(message) from None


def parse_threads(text: str) -> int | str:
    if text.strip().lower() == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"threads must be at least 1, got {value}")
    return value


def _add_measure_args(parser: argparse.ArgumentParser, families: Sequence[str]) -> None:
    group = parser.add_argument_group("measure")
    group.add_argument("--measure", choices=families, help="similarity measure")
    group.add_argument("--cost", choices=["squared", "absolute"], help="DTW ground cost")
    group.add_argument(
        "--root",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="take the square root of the accumulated DTW cost",
    )
    group.add_argument("--epsilon", type=float, help="LCS matching threshold")
    group.add_argument("--match", choices=["relative", "absolute"], help="LCS matching mode")


def _add_band_args(parser: argparse.ArgumentParser, schedule: bool) -> None:
    band = parser.add_mutually_exclusive_group()
    if schedule:
        band.add_argument(
            "--percents", type=parse_percents, help="constraint schedule, e.g. 75,50,25,0"
        )
    else:
        band.add_argument("--percent", type=float, help="band width in %% of the series length")
    band.add_argument(
        "--unconstrained",
        action="store_true",
        default=None,
        help="no band (reference only for sweeps)",
    )


def _add_run_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("run")
    group.add_argument("--normalize", action="store_true", default=None, help="z-normalize series")
    group.add_argument(
        "--threads",
        type=parse_threads,
        help=f"worker threads or 'auto' (default: ${THREADS_ENV_VAR} or auto)",
    )
    group.add_argument("--repeat", type=int, help="timed runs per matrix; the median is reported")
    group.add_argument("--out", type=Path, help="output directory")
    group.add_argument("--config", type=Path, help="YAML run file supplying defaults")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elastic-bands",
        description="Constrained DTW/LCS distances, distance matrices and 1NN constraint sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--log-level", default="INFO", help="logging level (default: INFO)")
    parser.add_argument("--quiet", action="store_true", help="no progress bars or tables")
    sub = parser.add_subparsers(dest="command", required=True)

    dist = sub.add_parser("dist", help="distance between two series")
    dist.add_argument("files", nargs="+", type=Path, help="one UCR file (two ids) or two files")
    dist.add_argument("--ids", nargs=2, type=int, metavar=("I", "J"), help="series ids to compare")
    _add_measure_args(dist, ["euclidean", "dtw", "lcs"])
    _add_band_args(dist, schedule=False)
    dist.add_argument("--normalize", action="store_true", default=None, help="z-normalize series")
    dist.add_argument("--config", type=Path, help="YAML run file supplying defaults")
    dist.set_defaults(handler=cmd_dist)

    matrix = sub.add_parser("matrix", help="timed pairwise distance matrix")
    matrix.add_argument("datasets", nargs="*", type=Path, help="UCR files or archive directories")
    _add_measure_args(matrix, ["euclidean", "dtw", "lcs"])
    _add_band_args(matrix, schedule=False)
    _add_run_args(matrix)
    matrix.add_argument("--no-csv", action="store_true", help="skip the CSV export")
    matrix.set_defaults(handler=cmd_matrix)

    sweep = sub.add_parser("sweep", help="1NN graph change across a constraint schedule")
    sweep.add_argument("datasets", nargs="*", type=Path, help="UCR files or archive directories")
    _add_measure_args(sweep, ["dtw", "lcs"])
    _add_band_args(sweep, schedule=True)
    _add_run_args(sweep)
    sweep.add_argument(
        "--save-matrices", action="store_true", help="also write every matrix of the sweep"
    )
    sweep.add_argument(
        "--concurrent",
        action="store_true",
        help="run schedule entries concurrently (timings are then not comparable)",
    )
    sweep.set_defaults(handler=cmd_sweep)

    diff = sub.add_parser("graph-diff", help="1NN graph change between two matrix files")
    diff.add_argument("matrix_a", type=Path)
    diff.add_argument("matrix_b", type=Path)
    diff.set_defaults(handler=cmd_graph_diff)

    report = sub.add_parser("report", help="merge sweep CSVs into one table")
    report.add_argument("reports", nargs="+", type=Path, help="sweep CSV files")
    report.add_argument(
        "--value",
        choices=REPORT_VALUES,
        default="change_percent",
        help="table to build: 1NN graph change or matrix wall-clock time",
    )
    report.add_argument(
        "--out",
        type=Path,
        help="CSV file, or a directory for report.csv (report_times.csv for wall_ms)",
    )
    report.set_defaults(handler=cmd_report)

    return parser


def _set(target: dict[str, Any], keys: Sequence[str], value: Any) -> None:
    if value is None:
        return
    for key in keys[:-1]:
        target = target.setdefault(key, {})
    target[keys[-1]] = value


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Config-file values first, explicit flags on top."""
    config_path = getattr(args, "config", None)
    values: dict[str, Any] = read_config_file(config_path) if config_path else {}
    values["command"] = args.command
    if isinstance(values.get("measure"), str):
        values["measure"] = {"measure": values["measure"]}

    datasets = getattr(args, "datasets", None) or getattr(args, "files", None)
    if datasets:
        values["datasets"] = [str(p) for p in datasets]

    _set(values, ["measure", "measure"], getattr(args, "measure", None))
    _set(values, ["measure", "cost", "kind"], getattr(args, "cost", None))
    _set(values, ["measure", "cost", "final_root"], getattr(args, "root", None))
    _set(values, ["measure", "match", "epsilon"], getattr(args, "epsilon", None))
    _set(values, ["measure", "match", "mode"], getattr(args, "match", None))

    if getattr(args, "percent", None) is not None:
        _set(values, ["measure", "band", "percent"], args.percent)
    if getattr(args, "percents", None) is not None:
        values["percents"] = args.percents
    if getattr(args, "unconstrained", None):
        _set(values, ["measure", "band"], {"percent": None})
        if args.command == "sweep":
            values["percents"] = []

    _set(values, ["normalize"], getattr(args, "normalize", None))
    _set(values, ["repeat"], getattr(args, "repeat", None))
    _set(values, ["out_dir"], getattr(args, "out", None))

    threads = getattr(args, "threads", None)
    if threads is None and "threads" not in values and os.environ.get(THREADS_ENV_VAR):
        threads = parse_threads(os.environ[THREADS_ENV_VAR])
    _set(values, ["threads"], threads)

    return RunConfig.from_dict(values)


def dataset_groups(paths: Sequence[Path]) -> list[list[Path]]:
    """Directories are datasets of their own; plain files are merged into one dataset."""
    if not paths:
        raise ValueError("no dataset given (pass paths or a --config file with datasets)")
    if all(Path(p).is_dir() for p in paths):
        return [[Path(p)] for p in paths]
    return [[Path(p) for p in paths]]


def cmd_dist(args: argparse.Namespace, console: Console) -> None:
    config = build_run_config(args)
    files = config.datasets
    if len(files) > 2:
        raise ValueError(f"dist takes one or two files, got {len(files)}")

    first = load_dataset(files[0], normalize=config.normalize)
    second = load_dataset(files[1], normalize=config.normalize) if len(files) == 2 else first
    if args.ids is not None:
        i, j = args.ids
    else:
        i, j = (0, 0) if len(files) == 2 else (0, 1)
    for dataset, index in ((first, i), (second, j)):
        if not 0 <= index < len(dataset):
            raise ValueError(f"series id {index} outside 0..{len(dataset) - 1} in {dataset.name}")

    q, c = first[i], second[j]
    mc = config.measure
    value = measure(q, c, mc)
    radius = "0" if mc.measure == "euclidean" else resolve_band(mc.band, len(q), len(c)).label
    print(f"{value!r} radius={radius}")


def cmd_matrix(args: argparse.Namespace, console: Console) -> None:
    config = build_run_config(args)
    run_hash = config.config_hash()
    lines: list[str] = []
    with staged_output(config.out_dir) as stage:
        for paths in dataset_groups(config.datasets):
            dataset = load_dataset(paths, normalize=config.normalize)
            m = compute_matrix(
                dataset,
                config.measure,
                parallelism=config.threads,
                repeat=config.repeat,
                progress=not args.quiet,
                run_hash=run_hash,
            )
            name = matrix_file_name(dataset.name, config.measure.measure, config.measure.band)
            matrix_path = write_matrix(m, stage / name)
            if not args.no_csv:
                export_matrix_csv(m, matrix_path.with_suffix(".csv"))
            lines.append(
                f"{dataset.name},{config.measure.measure},"
                f"{format_percent(config.measure.band.percent)},{m.timing.wall_ms!r}"
            )
    for line in lines:
        print(line)


class SweepRun:
    """Load, sweep and write one dataset as a ``Pipeline`` of steps, all outputs under ``stage``."""

    def __init__(
        self,
        config: RunConfig,
        paths: list[Path],
        args: argparse.Namespace,
        console: Console,
        stage: Path,
    ) -> None:
        self.config = config
        self.paths = paths
        self.args = args
        self.console = console
        self.stage = stage
        self.run_hash = config.config_hash()
        self.family = config.measure.measure
        self.dataset: Dataset | None = None
        self.report: SweepReport | None = None

        self.pipeline = Pipeline(name="sweep")
        self.pipeline.add_step(self.load_data).add_step(self.run_sweep).add_step(self.write_reports)

    def run(self) -> SweepReport:
        self.pipeline.run()
        assert self.report is not None
        return self.report

    def load_data(self) -> None:
        self.dataset = load_dataset(self.paths, normalize=self.config.normalize)

    def run_sweep(self) -> None:
        assert self.dataset is not None
        params = self.config.measure.cost if self.family == "dtw" else self.config.measure.match
        self.report = constraint_sweep(
            self.dataset,
            self.family,
            params,
            schedule=self.config.schedule,
            parallelism=self.config.threads,
            repeat=self.config.repeat,
            timing=not self.args.concurrent,
            matrix_dir=self.stage / "matrices" if self.args.save_matrices else None,
            progress=not self.args.quiet,
            run_hash=self.run_hash,
        )

    def write_reports(self) -> None:
        assert self.report is not None
        stem = f"{self.report.dataset_name}_{self.family}_sweep"
        write_sweep_csv(self.report, self.stage / f"{stem}.csv", self.run_hash)
        write_sweep_yaml(
            self.report,
            self.stage / f"{stem}.yaml",
            self.config.model_dump(mode="json"),
            self.run_hash,
        )


def cmd_sweep(args: argparse.Namespace, console: Console) -> None:
    config = build_run_config(args)
    if config.measure.measure not in ("dtw", "lcs"):
        raise ValueError(f"sweeps support dtw and lcs, not {config.measure.measure}")
    reports: list[SweepReport] = []
    with staged_output(config.out_dir) as stage:
        for paths in dataset_groups(config.datasets):
            reports.append(SweepRun(config, paths, args, console, stage).run())
    if not args.quiet:
        for report in reports:
            print_sweep_table(report, console)


def cmd_graph_diff(args: argparse.Namespace, console: Console) -> None:
    a = read_matrix(args.matrix_a)
    b = read_matrix(args.matrix_b)
    if a.dataset_name != b.dataset_name or a.size != b.size:
        raise DatasetMismatchError(
            f"{args.matrix_a} ({a.dataset_name}, N={a.size}) and "
            f"{args.matrix_b} ({b.dataset_name}, N={b.size}) describe different datasets"
        )
    print(repr(graph_change(nn_graph(a), nn_graph(b))))


def cmd_report(args: argparse.Namespace, console: Console) -> None:
    table = merge_sweep_reports(args.reports, args.value)
    out = args.out or Path("output")
    default_name = "report.csv" if args.value == "change_percent" else "report_times.csv"
    write_merged_report(table, out if out.suffix == ".csv" else out / default_name)
    if not args.quiet:
        print_report_table(table, console, args.value)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_colored_logger("elastic_bands", args.log_level.upper())
    console = Console()

    handler: Callable[[argparse.Namespace, Console], None] = args.handler
    try:
        handler(args, console)
    except Exception as e:
        logger.error(f"{args.command} failed: {type(e).__name__}: {e!s}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
