from collections.abc import Iterator, Sequence
from dataclasses import dataclass, replace
from typing import Any

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One labeled series. ``values`` is a read-only, non-empty, finite float64 array."""

    label: int
    values: FloatArray
    id: int = 0

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True).ravel()
        if values.size == 0:
            raise ValueError(f"time series {self.id} is empty")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise ValueError(f"time series {self.id} has a non-finite sample at position {bad}")
        if self.id < 0:
            raise ValueError(f"time series id must be non-negative, got {self.id}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "label", int(self.label))

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.label == other.label
            and self.id == other.id
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.label, self.id, self.values.tobytes()))

    def with_values(self, values: Sequence[float] | FloatArray) -> "TimeSeries":
        return replace(self, values=np.asarray(values, dtype=np.float64))

    def with_id(self, new_id: int) -> "TimeSeries":
        return replace(self, id=new_id)


@dataclass(frozen=True)
class Dataset:
    name: str
    series: tuple[TimeSeries, ...]
    source_path: str = ""
    normalized: bool = False

    def __post_init__(self) -> None:
        series = tuple(self.series)
        for position, s in enumerate(series):
            if s.id != position:
                raise ValueError(
                    f"dataset {self.name}: series at position {position} has id {s.id}"
                )
        object.__setattr__(self, "series", series)

    def __len__(self) -> int:
        return len(self.series)

    def __iter__(self) -> Iterator[TimeSeries]:
        return iter(self.series)

    def __getitem__(self, index: int) -> TimeSeries:
        return self.series[index]

    @property
    def lengths(self) -> list[int]:
        return [len(s) for s in self.series]

    @property
    def labels(self) -> list[int]:
        return [s.label for s in self.series]

    @property
    def equal_length(self) -> bool:
        return len(set(self.lengths)) <= 1

    def summary(self) -> dict[str, Any]:
        lengths = self.lengths
        return {
            "name": self.name,
            "series_count": len(self.series),
            "min_length": min(lengths) if lengths else 0,
            "max_length": max(lengths) if lengths else 0,
            "equal_length": self.equal_length,
            "class_count": len(set(self.labels)),
            "normalized": self.normalized,
            "source_path": self.source_path,
        }

    @classmethod
    def from_arrays(
        cls,
        name: str,
        values: Sequence[Sequence[float]] | FloatArray,
        labels: Sequence[int] | None = None,
        source_path: str = "",
    ) -> "Dataset":
        """Build a dataset from rows of samples, assigning dense ids in row order."""
        labels = list(labels) if labels is not None else [0] * len(values)
        if len(labels) != len(values):
            raise ValueError(f"got {len(labels)} labels for {len(values)} series")
        series = tuple(
            TimeSeries(label=label, values=np.asarray(row, dtype=np.float64), id=i)
            for i, (label, row) in enumerate(zip(labels, values, strict=True))
        )
        return cls(name=name, series=series, source_path=source_path)
