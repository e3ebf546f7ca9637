import math

import pytest

from stepslab import UnitCell


@pytest.fixture
def cell_a() -> UnitCell:
    """Equal layer transit times, contrast 0.6."""
    return UnitCell(1.0, 4.0, 0.2)


@pytest.fixture
def cell_b() -> UnitCell:
    """Skewed transit times."""
    return UnitCell(1.0, 3.8, 0.2)


@pytest.fixture
def cell_c() -> UnitCell:
    """Skewed, negative contrast."""
    return UnitCell(3.8, 1.0, 0.8)


@pytest.fixture
def uniform() -> UnitCell:
    return UnitCell(1.0, 1.0, 0.5)


@pytest.fixture
def cell_family() -> list[UnitCell]:
    return [
        UnitCell(1.0, 4.0, 0.2),
        UnitCell(1.0, 3.8, 0.2),
        UnitCell(3.8, 1.0, 0.8),
        UnitCell(2.0, 1.0, 0.35),
        UnitCell(0.7, 2.4, 0.61),
    ]


# Analytic band-edge locations of cell_a.  With equal transit times the
# dispersion function reduces to F = (rho + 1) cos^2(0.8 lam) - rho, so
# F = -1 at cos(1.6 lam) = (rho - 3)/(rho + 1) = -0.28 and F = +1 with
# F' = 0 at lam = pi/0.8.
EDGE_A1 = math.acos(-0.28) / 1.6
EDGE_A2 = (2.0 * math.pi - math.acos(-0.28)) / 1.6
EDGE_A3 = math.pi / 0.8

#: Constant depth of the one-cell resonance line for cell_a: ln|d|/(b2 x2).
DEPTH_A1 = math.log(0.6) / 0.8
