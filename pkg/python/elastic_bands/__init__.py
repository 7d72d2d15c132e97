# Version
from ._version import VERSION

# Analysis
from .analysis.matrix import (
    DistanceMatrix,
    MatrixChecksumError,
    MatrixFormatError,
    MatrixVersionError,
    TimingRecord,
    compute_matrix,
    export_matrix_csv,
    read_matrix,
    write_matrix,
)
from .analysis.neighbors import DatasetMismatchError, NNGraph, graph_change, nn_graph
from .analysis.sweep import SweepReport, SweepRow, constraint_sweep

# Config
from .config.config import (
    BandSpec,
    GroundCost,
    MatchSpec,
    MeasureConfig,
    RunConfig,
    load_config,
)

# Data
from .data.loading import UCRFormatError, load_dataset, load_ucr, write_ucr
from .data.series import Dataset, TimeSeries
from .data.transformation import normalize_dataset, znormalize
from .data.validation import LengthMismatchError

# Measures
from .measures.constraints import ResolvedBand, band_cell_count, band_window, resolve_band
from .measures.core import (
    dtw_distance,
    euclidean,
    lcs_distance,
    lcs_length,
    measure,
    point_match,
    warm_up_kernels,
)

# Main entry point
from .main import main as run_cli

# Utils
from .utils.logger import setup_colored_logger
from .utils.pipeline import Pipeline

__version__ = VERSION

__all__ = [
    # Config
    "BandSpec",
    "GroundCost",
    "MatchSpec",
    "MeasureConfig",
    "RunConfig",
    "load_config",
    # Data
    "TimeSeries",
    "Dataset",
    "UCRFormatError",
    "LengthMismatchError",
    "load_ucr",
    "load_dataset",
    "write_ucr",
    "znormalize",
    "normalize_dataset",
    # Measures
    "ResolvedBand",
    "resolve_band",
    "band_window",
    "band_cell_count",
    "euclidean",
    "dtw_distance",
    "point_match",
    "lcs_length",
    "lcs_distance",
    "measure",
    "warm_up_kernels",
    # Analysis
    "DistanceMatrix",
    "TimingRecord",
    "MatrixFormatError",
    "MatrixVersionError",
    "MatrixChecksumError",
    "compute_matrix",
    "write_matrix",
    "read_matrix",
    "export_matrix_csv",
    "NNGraph",
    "DatasetMismatchError",
    "nn_graph",
    "graph_change",
    "SweepRow",
    "SweepReport",
    "constraint_sweep",
    # Utils
    "setup_colored_logger",
    "Pipeline",
    # Main entry point
    "run_cli",
    # Version
    "__version__",
]
