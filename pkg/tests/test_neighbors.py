from pathlib import Path

import numpy as np
import pytest

from elastic_bands.analysis.matrix import DistanceMatrix, TimingRecord, compute_matrix
from elastic_bands.analysis.neighbors import DatasetMismatchError, NNGraph, graph_change, nn_graph
from elastic_bands.analysis.sweep import constraint_sweep, family_config, matrix_file_name
from elastic_bands.config.config import BandSpec, GroundCost, MatchSpec, MeasureConfig

from .helpers import random_dataset, random_walks

DTW = MeasureConfig(measure="dtw")


def hand_matrix(
    values: list[list[float]], name: str = "toy", symmetric: bool = True
) -> DistanceMatrix:
    size = len(values)
    pairs = size * (size - 1) // 2 if symmetric else size * (size - 1)
    timing = TimingRecord(wall_ms=1.0, pair_count=pairs, threads=1, host="test")
    return DistanceMatrix(
        dataset_name=name,
        config=DTW,
        values=np.array(values),
        timing=timing,
        symmetric=symmetric,
    )


def graph(nn: list[int], name: str = "toy") -> NNGraph:
    return NNGraph(dataset_name=name, config=DTW, nn=np.array(nn))


def test_nn_graph_examples():
    assert nn_graph(hand_matrix([[0, 1], [1, 0]])).nn.tolist() == [1, 0]
    rows = [[0, 2.0, 1.5], [2.0, 0, 3.0], [1.5, 3.0, 0]]
    assert nn_graph(hand_matrix(rows)).nn[0] == 2


def test_nn_graph_ties_go_to_smallest_id():
    rows = [[0, 1.0, 1.0, 1.0], [1.0, 0, 1.0, 1.0], [1.0, 1.0, 0, 1.0], [1.0, 1.0, 1.0, 0]]
    assert nn_graph(hand_matrix(rows)).nn.tolist() == [1, 0, 0, 0]


def test_nn_graph_reads_rows_of_asymmetric_matrices():
    rows = [[0, 5.0, 1.0], [1.0, 0, 5.0], [5.0, 1.0, 0]]
    assert nn_graph(hand_matrix(rows, symmetric=False)).nn.tolist() == [2, 0, 1]


def test_graph_change_examples():
    ref = graph([1, 0, 0])
    assert graph_change(ref, ref) == 0.0
    assert graph_change(graph([1, 0, 1]), ref) == pytest.approx(100.0 / 3)
    assert graph_change(graph([2, 2, 1]), ref) == 100.0


def test_graph_change_dataset_mismatch():
    with pytest.raises(DatasetMismatchError):
        graph_change(graph([1, 0], name="a"), graph([1, 0], name="b"))
    with pytest.raises(DatasetMismatchError):
        graph_change(graph([1, 0]), graph([1, 0, 0]))


def test_nn_graph_validation():
    with pytest.raises(ValueError):
        graph([0, 1])
    with pytest.raises(ValueError):
        graph([1, 5, 0])
    with pytest.raises(ValueError):
        graph([0])


def test_fingerprint_follows_neighbors():
    assert graph([1, 0, 0]).fingerprint() == graph([1, 0, 0]).fingerprint()
    assert graph([1, 0, 0]).fingerprint() != graph([1, 0, 1]).fingerprint()


def test_final_root_does_not_change_graphs(rng: np.random.Generator):
    rooted = MeasureConfig(measure="dtw", cost=GroundCost(final_root=True))
    raw = MeasureConfig(measure="dtw", cost=GroundCost(final_root=False))
    for k in range(20):
        dataset = random_dataset(rng, int(rng.integers(3, 9)), int(rng.integers(4, 20)), f"d{k}")
        for percent in (None, 10.0, 0.0):
            band = BandSpec(percent=percent)
            a = nn_graph(compute_matrix(dataset, rooted.with_band(band), parallelism=1))
            b = nn_graph(compute_matrix(dataset, raw.with_band(band), parallelism=1))
            assert a == b


def test_sweep_reference_only(rng: np.random.Generator):
    report = constraint_sweep(random_dataset(rng, 5, 12), "dtw", schedule=[], parallelism=1)
    assert len(report.rows) == 1
    assert report.reference.percent is None
    assert report.reference.change_percent == 0.0
    assert report.reference.radius is None


def test_sweep_rows(rng: np.random.Generator):
    dataset = random_walks(rng, 8, 30)
    report = constraint_sweep(dataset, "dtw", GroundCost(), schedule=[100, 50, 0], parallelism=2)
    assert [row.label for row in report.rows] == ["unconstrained", "100", "50", "0"]
    assert [row.radius for row in report.rows] == [None, 30, 15, 0]
    assert report.change_at(100) == 0.0
    assert all(0.0 <= row.change_percent <= 100.0 for row in report.rows)
    assert all(row.pair_count == 28 for row in report.rows)
    assert report.reference.cell_count == 28 * 30 * 30
    assert report.rows[-1].cell_count == 28 * 30
    assert report.environment["tie_rule"]
    assert report.environment["dataset"]["series_count"] == 8
    with pytest.raises(KeyError):
        report.change_at(25)


def test_sweep_change_matches_graph_diff(rng: np.random.Generator):
    dataset = random_walks(rng, 9, 24)
    spec = MatchSpec(epsilon=0.5)
    report = constraint_sweep(dataset, "lcs", spec, schedule=[10], parallelism=1)
    lcs = MeasureConfig(measure="lcs", match=spec)
    reference = nn_graph(compute_matrix(dataset, lcs, parallelism=1))
    banded = nn_graph(compute_matrix(dataset, lcs.with_band(BandSpec(percent=10)), parallelism=1))
    assert report.change_at(10) == graph_change(banded, reference)
    assert report.reference_fingerprint == reference.fingerprint()


def test_sweep_is_deterministic_across_threads(rng: np.random.Generator, tmp_path: Path):
    dataset = random_walks(rng, 10, 32)
    schedule = [50, 10, 0]
    serial = constraint_sweep(
        dataset, "dtw", schedule=schedule, parallelism=1, matrix_dir=tmp_path / "serial"
    )
    parallel = constraint_sweep(
        dataset, "dtw", schedule=schedule, parallelism=4, matrix_dir=tmp_path / "parallel"
    )
    concurrent = constraint_sweep(dataset, "dtw", schedule=schedule, parallelism=4, timing=False)
    for other in (parallel, concurrent):
        assert [r.change_percent for r in other.rows] == [r.change_percent for r in serial.rows]
        assert other.reference_fingerprint == serial.reference_fingerprint

    names = sorted(p.name for p in (tmp_path / "serial").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "parallel").iterdir())
    assert len(names) == 4
    assert matrix_file_name("walks", "dtw", BandSpec(percent=10)) in names


def test_sweep_rejects_unknown_family(rng: np.random.Generator):
    with pytest.raises(ValueError):
        constraint_sweep(random_dataset(rng, 3, 5), "euclidean")
    with pytest.raises(ValueError):
        family_config("dtw", MatchSpec())
    with pytest.raises(ValueError):
        constraint_sweep(random_dataset(rng, 3, 5), "dtw", schedule=[150])
