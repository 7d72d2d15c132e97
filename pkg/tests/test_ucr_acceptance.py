"""Checks against real UCR datasets; set ``UCR_ARCHIVE`` to the archive root to run them."""

import os
from pathlib import Path

import pytest

from elastic_bands.analysis.sweep import constraint_sweep
from elastic_bands.config.config import DEFAULT_SCHEDULE, GroundCost, MatchSpec
from elastic_bands.data.loading import load_dataset

pytestmark = pytest.mark.ucr

ARCHIVE = os.environ.get("UCR_ARCHIVE")
SMALL_DATASETS = ["Coffee", "Beef", "OliveOil"]


@pytest.fixture(scope="module")
def archive() -> Path:
    if not ARCHIVE:
        pytest.skip("UCR_ARCHIVE is not set")
    root = Path(ARCHIVE)
    if not root.is_dir():
        pytest.skip(f"UCR_ARCHIVE={ARCHIVE} is not a directory")
    return root


@pytest.mark.parametrize("name", SMALL_DATASETS)
@pytest.mark.parametrize("family", ["dtw", "lcs"])
def test_wide_band_keeps_every_neighbor(archive: Path, name: str, family: str):
    dataset = load_dataset(archive / name)
    params = GroundCost() if family == "dtw" else MatchSpec(epsilon=0.1)
    report = constraint_sweep(dataset, family, params, schedule=[75], timing=False)
    assert report.change_at(75) == 0.0


def test_coffee_dtw_trend(archive: Path):
    dataset = load_dataset(archive / "Coffee")
    assert len(dataset) == 56
    report = constraint_sweep(dataset, "dtw", GroundCost(), schedule=DEFAULT_SCHEDULE)
    assert report.change_at(75) == 0.0
    assert abs(report.change_at(0) - 25.0) <= 10.0
    assert abs(report.change_at(1) - 23.214) <= 10.0
    assert report.change_at(0) > report.change_at(75)
