"""Sakoe-Chiba band resolution: percentages to cell radii, radii to per-row column windows."""

import logging
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from ..config.config import BandSpec

logger = logging.getLogger(__name__)

ROUNDING_RULE = "round-half-up(percent / 100 * max(n, m)), widened to |n - m|"


@dataclass(frozen=True)
class ResolvedBand:
    """A band radius in cells for a concrete pair of lengths; ``radius=None`` is unconstrained."""

    radius: int | None
    n: int
    m: int
    widened: bool = False

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError(f"band lengths must be positive, got n={self.n}, m={self.m}")
        if self.radius is not None and self.radius < abs(self.n - self.m):
            raise ValueError(
                f"radius {self.radius} cannot reach cell ({self.n}, {self.m}); "
                f"need at least {abs(self.n - self.m)}"
            )

    @property
    def is_unconstrained(self) -> bool:
        return self.radius is None

    @property
    def effective_radius(self) -> int:
        """Radius handed to the DP kernels; any value ``>= max(n, m)`` covers the whole matrix."""
        return max(self.n, self.m) if self.radius is None else self.radius

    @property
    def label(self) -> str:
        return "unconstrained" if self.radius is None else str(self.radius)

    @classmethod
    def from_radius(cls, radius: int | None, n: int, m: int) -> "ResolvedBand":
        """Use an explicit cell radius, widening it when the lengths differ by more."""
        if radius is None:
            return cls(radius=None, n=n, m=m)
        if radius < 0:
            raise ValueError(f"radius must be non-negative, got {radius}")
        gap = abs(n - m)
        return cls(radius=max(radius, gap), n=n, m=m, widened=radius < gap)


def percent_to_radius(percent: float, n: int, m: int) -> int:
    cells = Decimal(repr(float(percent))) * max(n, m) / 100
    return int(cells.to_integral_value(rounding=ROUND_HALF_UP))


def resolve_band(spec: BandSpec, n: int, m: int, warn: bool = True) -> ResolvedBand:
    """
    Resolve a percentage band against two series lengths.

    The radius is ``percent/100 * max(n, m)`` rounded half up, then widened to ``|n - m|``
    so that the corner cell ``(n, m)`` stays reachable. Widening is logged as a warning, or
    at debug level with ``warn=False`` when the caller reports it once for many pairs.
    """
    if n < 1 or m < 1:
        raise ValueError(f"series lengths must be positive, got n={n}, m={m}")
    if spec.percent is None:
        return ResolvedBand(radius=None, n=n, m=m)

    radius = percent_to_radius(spec.percent, n, m)
    gap = abs(n - m)
    if radius < gap:
        logger.log(
            logging.WARNING if warn else logging.DEBUG,
            f"Band {spec.label}% resolves to radius {radius} for lengths {n} and {m}; "
            f"widened to {gap}"
        )
        return ResolvedBand(radius=gap, n=n, m=m, widened=True)
    return ResolvedBand(radius=radius, n=n, m=m)


def band_window(i: int, band: ResolvedBand) -> tuple[int, int]:
    """
    Inclusive 1-based column range of the in-band cells on row ``i``.

    The window is centered on the scaled diagonal ``j* = i*m/n`` and spans ``j* +- radius``,
    clipped to ``[1, m]``. For equal lengths this is exactly ``|i - j| <= radius``.
    """
    n, m = band.n, band.m
    if not 1 <= i <= n:
        raise ValueError(f"row {i} outside 1..{n}")
    if band.radius is None:
        return 1, m
    return _window(i, n, m, band.radius)


def _window(i: int, n: int, m: int, radius: int) -> tuple[int, int]:
    # integer arithmetic: ceil((i*m - r*n) / n) and floor((i*m + r*n) / n)
    lo = -((radius * n - i * m) // n)
    hi = (i * m + radius * n) // n
    return max(1, lo), min(m, hi)


def band_cell_count(band: ResolvedBand) -> int:
    """Number of DP cells inside the band."""
    if band.radius is None:
        return band.n * band.m
    total = 0
    for i in range(1, band.n + 1):
        lo, hi = _window(i, band.n, band.m, band.radius)
        total += max(0, hi - lo + 1)
    return total
