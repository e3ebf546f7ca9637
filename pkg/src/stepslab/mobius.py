"""The unit-disk automorphism that adds one cell to the slab.

At real frequencies, appending one cell maps the slab reflection
coefficient through a linear-fractional automorphism of the unit disk.
Its fixed points classify the frequency: elliptic inside bands (the
reflection sequence keeps rotating), hyperbolic inside gaps and
parabolic at non-degenerate edges (the sequence converges to a
unit-modulus limit, the half-infinite reflection coefficient).

The closed forms below require equal layer transit times
(b2 x2 == b1 (1 - x2)); the general case is covered by the direct slab
formulas in :mod:`stepslab.scattering`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (EdgeDegeneracyError, HomogeneousCellError,
                     NotCommensurateError)
from .medium import UnitCell, is_commensurate

#: |eta - 1| below this marks a degenerate edge, where the map collapses
#: to the identity.
_ETA_TOL = 1e-12


class FixedPointKind(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class MobiusMap:
    """One-cell update z -> s(eta * s(eta * z)) with s(q) = (d - q)/(1 - d q).

    ``s`` is the involutive disk automorphism of one interface and
    ``eta = exp(2i lam b2 x2)`` the round-trip phase of one layer; for
    real frequencies |eta| = 1 and the composition maps the open unit
    disk onto itself.  Iterating from 0 reproduces the slab reflection
    coefficients: apply(r_k) = r_{k+1} with r_0 = 0.
    """

    eta: complex
    d: float
    lam: float

    def apply(self, z):
        inner = self.eta * (self.d - self.eta * z) / (1.0 - self.d * self.eta * z)
        return (self.d - inner) / (1.0 - self.d * inner)

    def __call__(self, z):
        return self.apply(z)


def mobius_map(cell: UnitCell, lam: float) -> MobiusMap:
    """The one-cell update map at a real frequency (commensurate cells only)."""
    if not is_commensurate(cell):
        raise NotCommensurateError(
            "map requires equal layer transit times: b2*x2 == b1*(1 - x2)")
    lam = float(lam)
    eta = cmath.exp(2j * lam * cell.b2 * cell.x2)
    return MobiusMap(eta, cell.contrast, lam)


def r1(cell: UnitCell, lam):
    """One-cell reflection coefficient, r1 = d (1 - eta)/(1 - d^2 eta).

    Valid for every cell (no commensurability needed) and identical to
    the propagator-route value at k = 1.  For real frequencies
    |r1| <= 2|d|/(1 + d^2) < 1, with equality mid-gap.
    """
    d = cell.contrast
    eta = np.exp(2j * np.asarray(lam) * cell.b2 * cell.x2)
    out = d * (1.0 - eta) / (1.0 - d * d * eta)
    return complex(out) if out.ndim == 0 else out


def r1_modulus_bound(cell: UnitCell) -> float:
    """Sharp bound on |r1| over real frequencies: 2|d|/(1 + d^2)."""
    d = abs(cell.contrast)
    return 2.0 * d / (1.0 + d * d)


@dataclass(frozen=True)
class FixedPointAnalysis:
    """Fixed points of the one-cell map and their Burckel class.

    ``discriminant`` is cos^2(lam b2 x2) - d^2: positive inside bands
    (elliptic), negative inside gaps (hyperbolic), zero at
    non-degenerate edges (parabolic).
    """

    z1: complex
    z2: complex
    kind: FixedPointKind
    discriminant: float


def fixed_points(cell: UnitCell, lam: float) -> FixedPointAnalysis:
    """Solve apply(z) = z in closed form and classify the map.

    z = (cos(phi) +- sqrt(cos^2(phi) - d^2)) * exp(-i phi) / d with
    phi = lam b2 x2; z1 is the root of smaller modulus (larger real part
    on ties).  Elliptic roots satisfy |z1| < 1 < |z2| and
    z1 * conj(z2) = 1; hyperbolic and parabolic roots are unimodular.
    """
    if not is_commensurate(cell):
        raise NotCommensurateError(
            "fixed points require equal layer transit times: b2*x2 == b1*(1 - x2)")
    if cell.contrast == 0.0:
        raise HomogeneousCellError("the one-cell map of a homogeneous cell is a pure rotation")
    lam = float(lam)
    d = cell.contrast
    phi = lam * cell.b2 * cell.x2
    eta = cmath.exp(2j * phi)
    if abs(eta - 1.0) < _ETA_TOL:
        raise EdgeDegeneracyError(
            f"one-cell map degenerates to the identity at lam={lam}")
    c = math.cos(phi)
    disc = c * c - d * d
    root = cmath.sqrt(complex(disc))
    rot = cmath.exp(-1j * phi) / d
    za = (c + root) * rot
    zb = (c - root) * rot
    if (abs(za), -za.real) <= (abs(zb), -zb.real):
        z1, z2 = za, zb
    else:
        z1, z2 = zb, za
    if disc > 1e-10 and c * c < 1.0:
        kind = FixedPointKind.ELLIPTIC
    elif disc < -1e-10:
        kind = FixedPointKind.HYPERBOLIC
    else:
        kind = FixedPointKind.PARABOLIC
    return FixedPointAnalysis(z1, z2, kind, disc)


@dataclass(frozen=True)
class IterateResult:
    converged: bool
    value: complex
    kind: FixedPointKind | None


def iterate_limit(cell: UnitCell, lam: float, z0: complex,
                  max_iter: int = 10_000) -> IterateResult:
    """Iterate the one-cell map from z0 and report the limit behavior.

    Hyperbolic and parabolic frequencies converge to a unimodular fixed
    point (the half-infinite reflection coefficient); elliptic
    frequencies keep rotating and are reported unconverged with the last
    orbit point.  At a degenerate edge the map is the identity and z0 is
    returned immediately.
    """
    if abs(z0) >= 1.0:
        raise ValueError(f"start point must lie inside the unit disk, got |z0|={abs(z0)}")
    fmap = mobius_map(cell, lam)
    if abs(fmap.eta - 1.0) < _ETA_TOL:
        return IterateResult(True, complex(z0), None)
    kind: FixedPointKind | None
    if cell.contrast == 0.0:
        kind = None
    else:
        kind = fixed_points(cell, lam).kind
    z = complex(z0)
    for _ in range(max_iter):
        znew = fmap.apply(z)
        if abs(znew - z) < 1e-10:
            return IterateResult(True, znew, kind)
        z = znew
    return IterateResult(False, z, kind)
