"""Two-step unit cells for piecewise-constant wave media.

A cell of length one carries inverse wave speed b2 on [0, x2) and b1 on
[x2, 1).  A slab made of k identical cells, embedded in a uniform b1
background, is the scatterer studied by the rest of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

#: Relative tolerance of the equal-transit-time test.  Double precision
#: cannot meaningfully distinguish finer, and every downstream
#: periodicity check uses the same tolerance.
COMMENSURATE_RTOL = 1e-12


@dataclass(frozen=True)
class UnitCell:
    """One period of the medium: slowness b2 on [0, x2), b1 on [x2, 1)."""

    b1: float
    b2: float
    x2: float

    def __post_init__(self):
        if not (self.b1 > 0.0 and self.b2 > 0.0):
            raise ValueError(f"slownesses must be positive, got b1={self.b1}, b2={self.b2}")
        if not 0.0 < self.x2 < 1.0:
            raise ValueError(f"interface position must lie in (0, 1), got x2={self.x2}")

    @property
    def contrast(self) -> float:
        """Single-interface reflection amplitude (b2 - b1)/(b2 + b1), in (-1, 1)."""
        return (self.b2 - self.b1) / (self.b2 + self.b1)

    @property
    def mismatch(self) -> float:
        """(b1^2 + b2^2) / (2 b1 b2); at least 1, equal to 1 iff b1 == b2."""
        return (self.b1 * self.b1 + self.b2 * self.b2) / (2.0 * self.b1 * self.b2)

    @property
    def transit_time(self) -> float:
        """Travel time across one cell, x2*b2 + (1 - x2)*b1."""
        return self.x2 * self.b2 + (1.0 - self.x2) * self.b1

    @property
    def transit_skew(self) -> float:
        """Difference of the layer travel times, x2*b2 - (1 - x2)*b1."""
        return self.x2 * self.b2 - (1.0 - self.x2) * self.b1

    @property
    def homogeneous(self) -> bool:
        """True when b1 == b2 (no interfaces, zero contrast)."""
        return self.b1 == self.b2


class CellConstants(NamedTuple):
    contrast: float
    mismatch: float
    transit_time: float
    transit_skew: float


def derived_constants(cell: UnitCell) -> CellConstants:
    """Contrast, mismatch and the two phase lengths of a cell.

    The dispersion function depends on the cell only through these four
    numbers, so they are computed in one place.
    """
    return CellConstants(cell.contrast, cell.mismatch, cell.transit_time, cell.transit_skew)


def is_commensurate(cell: UnitCell) -> bool:
    """True when the two layers have equal transit times: b2*x2 == b1*(1 - x2).

    Under this condition the band spectrum and the resonance spectrum are
    periodic in frequency with period ``spectral_period(cell)``, and the
    one-cell transparency frequencies become degenerate band edges.
    """
    inner = cell.b2 * cell.x2
    outer = cell.b1 * (1.0 - cell.x2)
    return abs(inner - outer) <= COMMENSURATE_RTOL * max(inner, outer)


def spectral_period(cell: UnitCell) -> float:
    """Frequency period pi/(b2*x2); meaningful when the cell is commensurate."""
    return math.pi / (cell.b2 * cell.x2)


def transparency_frequencies(cell: UnitCell, lambda_max: float) -> list[float]:
    """Frequencies m*pi/(x2*b2), m >= 1, up to lambda_max.

    A single cell transmits perfectly at these frequencies, so a slab of
    any number of cells does as well.
    """
    if lambda_max <= 0.0:
        return []
    step = math.pi / (cell.x2 * cell.b2)
    return [m * step for m in range(1, int(lambda_max / step) + 1) if m * step <= lambda_max]


@dataclass(frozen=True)
class SlabConfig:
    """A finite slab: k identical cells on [0, k], uniform b1 outside."""

    cell: UnitCell
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"cell count must be a positive integer, got k={self.k}")

    @property
    def commensurate(self) -> bool:
        return is_commensurate(self.cell)
