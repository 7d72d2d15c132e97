import logging
import math
from collections.abc import Sequence

import numpy as np

from ..config.config import GroundCost, MatchSpec, MeasureConfig
from ..data.series import FloatArray, TimeSeries
from ..data.validation import LengthMismatchError
from ..measures.constraints import ResolvedBand, resolve_band
from ..measures.kernels import (
    COST_ABSOLUTE,
    COST_SQUARED,
    MATCH_ABSOLUTE,
    MATCH_RELATIVE,
    banded_dtw,
    banded_lcs,
    points_match,
)

logger = logging.getLogger(__name__)

SeriesLike = TimeSeries | FloatArray | Sequence[float]
BandLike = ResolvedBand | int | None

_COST_CODES = {"squared": COST_SQUARED, "absolute": COST_ABSOLUTE}
_MATCH_CODES = {"absolute": MATCH_ABSOLUTE, "relative": MATCH_RELATIVE}


def _samples(s: SeriesLike) -> FloatArray:
    if isinstance(s, TimeSeries):
        return s.values
    values = np.ascontiguousarray(s, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise ValueError(f"expected a non-empty 1-d series, got shape {values.shape}")
    return values


def _kernel_radius(band: BandLike, n: int, m: int) -> int:
    if isinstance(band, ResolvedBand):
        band = band.radius
    return ResolvedBand.from_radius(band, n, m).effective_radius


def euclidean(q: SeriesLike, c: SeriesLike) -> float:
    """Lock-step distance ``sqrt(sum((q_i - c_i)^2))``; both series must have equal length."""
    qv, cv = _samples(q), _samples(c)
    if qv.size != cv.size:
        raise LengthMismatchError(qv.size, cv.size, "euclidean")
    diff = qv - cv
    return float(np.sqrt(np.dot(diff, diff)))


def dtw_distance(
    q: SeriesLike, c: SeriesLike, band: BandLike = None, cost: GroundCost | None = None
) -> float:
    """
    Dynamic time warping distance restricted to a Sakoe-Chiba band.

    Args:
        q, c: The two series (any lengths >= 1).
        band: A ``ResolvedBand``, a radius in cells, or ``None`` for no band. A radius
            narrower than ``|n - m|`` is widened so the end cell stays reachable.
        cost: Ground cost; squared difference with a final square root by default.

    Returns:
        float: Minimum accumulated cost over in-band warping paths.
    """
    cost = cost or GroundCost()
    qv, cv = _samples(q), _samples(c)
    radius = _kernel_radius(band, qv.size, cv.size)
    total = float(banded_dtw(qv, cv, radius, _COST_CODES[cost.kind]))
    return math.sqrt(total) if cost.final_root else total


def point_match(a: float, b: float, spec: MatchSpec) -> bool:
    return bool(points_match(float(a), float(b), float(spec.epsilon), _MATCH_CODES[spec.mode]))


def lcs_length(
    q: SeriesLike, c: SeriesLike, band: BandLike = None, spec: MatchSpec | None = None
) -> int:
    """Length of the longest common subsequence under ``point_match``, restricted to the band."""
    spec = spec or MatchSpec()
    qv, cv = _samples(q), _samples(c)
    radius = _kernel_radius(band, qv.size, cv.size)
    return int(banded_lcs(qv, cv, radius, float(spec.epsilon), _MATCH_CODES[spec.mode]))


def lcs_distance(
    q: SeriesLike, c: SeriesLike, band: BandLike = None, spec: MatchSpec | None = None
) -> float:
    """``1 - L / min(n, m)``, in ``[0, 1]``."""
    qv, cv = _samples(q), _samples(c)
    return 1.0 - lcs_length(qv, cv, band, spec) / min(qv.size, cv.size)


def measure(q: SeriesLike, c: SeriesLike, config: MeasureConfig) -> float:
    """Evaluate the configured measure on one pair, resolving the band for the pair's lengths."""
    if config.measure == "euclidean":
        return euclidean(q, c)
    qv, cv = _samples(q), _samples(c)
    band = resolve_band(config.band, qv.size, cv.size, warn=False)
    if config.measure == "dtw":
        return dtw_distance(qv, cv, band, config.cost)
    return lcs_distance(qv, cv, band, config.match)


def warm_up_kernels() -> None:
    """Compile the DP kernels for the array types datasets hand them, so timings exclude JIT."""
    a = TimeSeries(label=0, values=np.array([0.0, 1.0, 2.0]))
    b = TimeSeries(label=0, values=np.array([0.0, 2.0]))
    for kind in _COST_CODES:
        dtw_distance(a, b, 1, GroundCost(kind=kind))  # type: ignore[arg-type]
    lcs_length(a, b, 1, MatchSpec(epsilon=0.5, mode="relative"))
    lcs_length(a, b, 1, MatchSpec(epsilon=0.5, mode="absolute"))
    logger.debug("DP kernels compiled")
