import hashlib
import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..analysis.matrix import DistanceMatrix
from ..config.config import MeasureConfig

logger = logging.getLogger(__name__)

TIE_RULE = "smallest id among equal distances"


class DatasetMismatchError(ValueError):
    """Two graphs or matrices describe different datasets."""


@dataclass(frozen=True, eq=False)
class NNGraph:
    """Directed 1-nearest-neighbor graph: ``nn[i]`` is the id of series i's nearest neighbor."""

    dataset_name: str
    config: MeasureConfig
    nn: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        nn = np.array(self.nn, dtype=np.int64, copy=True)
        size = nn.size
        if size < 2:
            raise ValueError(f"a nearest-neighbor graph needs at least 2 nodes, got {size}")
        if np.any((nn < 0) | (nn >= size)):
            raise ValueError("neighbor ids must lie in [0, N)")
        if np.any(nn == np.arange(size)):
            raise ValueError("a node cannot be its own nearest neighbor")
        nn.setflags(write=False)
        object.__setattr__(self, "nn", nn)

    @property
    def size(self) -> int:
        return int(self.nn.size)

    def fingerprint(self) -> str:
        return hashlib.sha256(self.nn.astype("<i8").tobytes()).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NNGraph):
            return NotImplemented
        return self.dataset_name == other.dataset_name and np.array_equal(self.nn, other.nn)

    __hash__ = None  # type: ignore[assignment]


def nn_graph(m: DistanceMatrix) -> NNGraph:
    """
    Build the 1NN graph of a distance matrix.

    Row ``i`` is read as the distances from series i; the diagonal is excluded and ties go
    to the smallest id (``argmin`` returns the first minimum).
    """
    if m.size < 2:
        raise ValueError(f"matrix {m.dataset_name} has {m.size} series, at least 2 are required")
    distances = np.array(m.values, dtype=np.float64, copy=True)
    np.fill_diagonal(distances, np.inf)
    return NNGraph(dataset_name=m.dataset_name, config=m.config, nn=np.argmin(distances, axis=1))


def graph_change(g: NNGraph, ref: NNGraph) -> float:
    """Percentage of nodes whose nearest neighbor in ``g`` differs from ``ref``."""
    if g.dataset_name != ref.dataset_name:
        raise DatasetMismatchError(
            f"graphs describe different datasets: {g.dataset_name!r} vs {ref.dataset_name!r}"
        )
    if g.size != ref.size:
        raise DatasetMismatchError(
            f"graphs for {g.dataset_name} have different sizes: {g.size} vs {ref.size}"
        )
    changed = int(np.count_nonzero(g.nn != ref.nn))
    return 100.0 * changed / g.size
