import math

import numpy as np
import pytest

from elastic_bands.config.config import BandSpec, GroundCost, MatchSpec, MeasureConfig
from elastic_bands.data.series import TimeSeries
from elastic_bands.data.validation import LengthMismatchError
from elastic_bands.measures.constraints import ResolvedBand, band_window
from elastic_bands.measures.core import (
    dtw_distance,
    euclidean,
    lcs_distance,
    lcs_length,
    measure,
    point_match,
)

from .helpers import naive_dtw, naive_lcs

RAW_SQUARED = GroundCost(kind="squared", final_root=False)
RADII = [0, 1, 2, 4, 8, 16, None]


def random_pair(rng: np.random.Generator, max_length: int) -> tuple[list[float], list[float]]:
    n, m = rng.integers(1, max_length + 1, size=2)
    return list(rng.uniform(-1.0, 1.0, n)), list(rng.uniform(-1.0, 1.0, m))


def test_euclidean_examples():
    assert euclidean([0.0, 0.0], [3.0, 4.0]) == 5.0
    assert euclidean([1.0, 2.0, 3.0], [2.0, 3.0, 4.0]) == pytest.approx(math.sqrt(3))
    s = TimeSeries(label=1, values=np.array([0.3, -1.2, 4.0]))
    assert euclidean(s, s) == 0.0


def test_euclidean_length_mismatch():
    with pytest.raises(LengthMismatchError) as excinfo:
        euclidean([1.0, 2.0], [1.0, 2.0, 3.0])
    assert excinfo.value.n == 2
    assert excinfo.value.m == 3
    assert "2 != 3" in str(excinfo.value)


def test_dtw_examples():
    assert dtw_distance([1.0], [2.0]) == 1.0
    assert dtw_distance([0.0, 1.0, 2.0], [0.0, 2.0, 2.0], cost=RAW_SQUARED) == 1.0
    q = [0.5, -0.25, 3.0, 1.0]
    for radius in (0, 1, 3, None):
        assert dtw_distance(q, q, radius) == 0.0


def test_dtw_absolute_cost():
    cost = GroundCost(kind="absolute", final_root=False)
    assert dtw_distance([0.0, 1.0, 2.0], [0.0, 2.0, 2.0], cost=cost) == 1.0
    assert dtw_distance([1.0], [-2.0], cost=cost) == 3.0


def test_point_match_examples():
    relative = MatchSpec(epsilon=0.1, mode="relative")
    assert point_match(10.0, 10.5, relative)
    assert not point_match(10.0, 11.5, relative)
    assert not point_match(0.0, 0.0, MatchSpec(epsilon=0.5, mode="relative"))
    assert point_match(-10.0, -10.5, relative)
    assert point_match(1.0, 1.0, MatchSpec(epsilon=0.0, mode="absolute"))
    assert point_match(1.0, 1.25, MatchSpec(epsilon=0.25, mode="absolute"))
    assert not point_match(1.0, 1.3, MatchSpec(epsilon=0.25, mode="absolute"))


def test_lcs_examples():
    q = [1.0, 2.0, 3.0, 4.0]
    c = [2.0, 3.0, 4.0, 5.0]
    exact = MatchSpec(epsilon=0.0, mode="absolute")
    spec = MatchSpec(epsilon=0.25, mode="absolute")
    assert lcs_length(q, q, None, exact) == 4
    assert lcs_length(q, c, None, spec) == 3
    assert lcs_length([1.0, 2.0], [5.0, 6.0], None, MatchSpec(epsilon=0.1)) == 0
    assert lcs_distance(q, q, None, exact) == 0.0
    assert lcs_distance([1.0, 2.0], [5.0, 6.0], None, MatchSpec(epsilon=0.1)) == 1.0
    assert lcs_distance(q, c, None, spec) == 0.25


def test_lcs_distance_uses_shorter_length():
    spec = MatchSpec(epsilon=0.0, mode="absolute")
    assert lcs_distance([1.0, 2.0], [1.0, 5.0, 2.0, 7.0], None, spec) == 0.0


def test_dtw_matches_naive_oracle(rng: np.random.Generator):
    for _ in range(100):
        q, c = random_pair(rng, 32)
        expected = naive_dtw(q, c)
        assert dtw_distance(q, c, None, RAW_SQUARED) == expected
        assert dtw_distance(q, c, max(len(q), len(c)), RAW_SQUARED) == expected
        assert dtw_distance(q, c) == math.sqrt(expected)
        absolute = GroundCost(kind="absolute", final_root=False)
        assert dtw_distance(q, c, None, absolute) == naive_dtw(q, c, squared=False)


def test_lcs_matches_naive_oracle(rng: np.random.Generator):
    for _ in range(100):
        q, c = random_pair(rng, 32)
        epsilon = float(rng.choice([0.05, 0.1, 0.3]))
        spec = MatchSpec(epsilon=epsilon, mode="absolute")
        expected = naive_lcs(q, c, epsilon)
        assert lcs_length(q, c, None, spec) == expected
        assert lcs_length(q, c, max(len(q), len(c)), spec) == expected


def banded_naive(q: list[float], c: list[float], band: ResolvedBand, epsilon: float):
    """Full-matrix DTW and LCS where out-of-band cells read +inf and 0."""
    n, m = len(q), len(c)
    inf = float("inf")
    d = [[inf] * (m + 1) for _ in range(n + 1)]
    d[0][0] = 0.0
    lcs = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        lo, hi = band_window(i, band)
        for j in range(lo, hi + 1):
            diff = q[i - 1] - c[j - 1]
            d[i][j] = diff * diff + min(d[i - 1][j - 1], d[i - 1][j], d[i][j - 1])
            if abs(diff) <= epsilon:
                lcs[i][j] = lcs[i - 1][j - 1] + 1
            else:
                lcs[i][j] = max(lcs[i - 1][j], lcs[i][j - 1])
    return d[n][m], lcs[n][m]


def test_banded_kernels_match_full_matrix_with_band(rng: np.random.Generator):
    spec = MatchSpec(epsilon=0.2, mode="absolute")
    for _ in range(100):
        q, c = random_pair(rng, 24)
        radius = int(rng.integers(0, 6))
        band = ResolvedBand.from_radius(radius, len(q), len(c))
        expected_dtw, expected_lcs = banded_naive(q, c, band, spec.epsilon)
        assert dtw_distance(q, c, band, RAW_SQUARED) == expected_dtw
        assert lcs_length(q, c, band, spec) == expected_lcs


def test_band_monotonicity(rng: np.random.Generator):
    spec = MatchSpec(epsilon=0.1, mode="absolute")
    for _ in range(100):
        n = int(rng.integers(1, 65))
        q = list(rng.uniform(-1.0, 1.0, n))
        c = list(rng.uniform(-1.0, 1.0, n))
        distances = [dtw_distance(q, c, r) for r in RADII]
        lengths = [lcs_length(q, c, r, spec) for r in RADII]
        assert all(a >= b for a, b in zip(distances, distances[1:], strict=False))
        assert all(a <= b for a, b in zip(lengths, lengths[1:], strict=False))
        assert dtw_distance(q, c, n) == distances[-1]
        assert lcs_length(q, c, n, spec) == lengths[-1]


def test_band_monotonicity_unequal_lengths(rng: np.random.Generator):
    for _ in range(50):
        q, c = random_pair(rng, 40)
        radii = sorted({abs(len(q) - len(c)) + k for k in (0, 1, 3, 8)})
        distances = [dtw_distance(q, c, r) for r in radii]
        assert all(a >= b for a, b in zip(distances, distances[1:], strict=False))


def test_zero_radius_reduces_to_euclidean(rng: np.random.Generator):
    for _ in range(100):
        n = int(rng.integers(1, 65))
        q = rng.uniform(-1.0, 1.0, n)
        c = rng.uniform(-1.0, 1.0, n)
        assert abs(dtw_distance(q, c, 0) - euclidean(q, c)) <= 1e-12


def test_symmetry_for_equal_lengths(rng: np.random.Generator):
    spec = MatchSpec(epsilon=0.1, mode="absolute")
    for _ in range(50):
        n = int(rng.integers(1, 40))
        q = rng.uniform(-1.0, 1.0, n)
        c = rng.uniform(-1.0, 1.0, n)
        for radius in (0, 2, None):
            assert dtw_distance(q, c, radius) == dtw_distance(c, q, radius)
            assert lcs_length(q, c, radius, spec) == lcs_length(c, q, radius, spec)


def test_non_negativity_and_identity(rng: np.random.Generator):
    spec = MatchSpec(epsilon=0.0, mode="absolute")
    for _ in range(20):
        q, c = random_pair(rng, 20)
        assert dtw_distance(q, c) >= 0.0
        assert 0.0 <= lcs_distance(q, c, None, MatchSpec(epsilon=0.2)) <= 1.0
        assert dtw_distance(q, q) == 0.0
        assert lcs_distance(q, q, None, spec) == 0.0


def test_narrow_band_widened_for_unequal_lengths():
    q = [0.0, 1.0, 2.0]
    c = [0.0, 1.0, 1.0, 2.0, 2.0, 2.0]
    assert dtw_distance(q, c, 0) == dtw_distance(q, c, 3)
    assert math.isfinite(dtw_distance(q, c, 0))


def test_measure_dispatch():
    q = TimeSeries(label=1, values=np.array([1.0, 2.0, 3.0, 4.0]))
    c = TimeSeries(label=1, values=np.array([2.0, 3.0, 4.0, 5.0]), id=1)
    lcs = MeasureConfig(measure="lcs", match=MatchSpec(epsilon=0.25))
    assert measure(q, c, lcs) == 0.25
    assert measure(q, c, MeasureConfig(measure="euclidean")) == 2.0
    diagonal = MeasureConfig(measure="dtw", band=BandSpec(percent=0))
    assert measure(q, c, diagonal) == pytest.approx(2.0, abs=1e-12)
    assert measure(q, c, MeasureConfig(measure="dtw")) <= measure(q, c, diagonal)


def test_relative_matching_is_asymmetric():
    spec = MatchSpec(epsilon=0.1, mode="relative")
    # 9.05 lies in (9, 11) around 10, but 10 is outside (8.145, 9.955) around 9.05
    assert point_match(10.0, 9.05, spec)
    assert not point_match(9.05, 10.0, spec)
    assert lcs_length([10.0], [9.05], None, spec) == 1
    assert lcs_length([9.05], [10.0], None, spec) == 0


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        dtw_distance([], [1.0])
    with pytest.raises(ValueError):
        TimeSeries(label=1, values=np.array([1.0, float("nan")]))
