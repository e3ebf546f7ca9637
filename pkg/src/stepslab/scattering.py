"""Reflection and transmission of the k-cell slab and the half-infinite medium.

Left incidence throughout: psi = exp(i lam b1 x) + r exp(-i lam b1 x) on
the left of the slab, a pure transmitted wave on the right.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import (BandMismatchError, BoundaryValueWarning,
                     EdgeDegeneracyError, PoleProximityError)
from .medium import UnitCell, transparency_frequencies
from .monodromy import (Band, Regime, _cheb_pair, bloch, lyapunov, monodromy,
                        transfer_power)

#: Denominator-to-numerator ratio below which a reflection quotient is
#: treated as a pole hit (below double-precision meaningfulness).
_POLE_RTOL = 1e-13


def reflection_k(cell: UnitCell, lam, k: int):
    """Slab reflection coefficient from the k-cell propagator entries.

    r_k = (d_k - a_k - i(b1 g_k + b_k/b1)) / (d_k + a_k + i(b1 g_k - b_k/b1))
    with (a_k, b_k, g_k, d_k) the entries of the k-cell propagator.  The
    quotient is analytic in the closed upper half plane and meromorphic
    below it, with poles exactly at the resonances.  Accepts scalar or
    array lam; the pole check applies to scalars only.
    """
    if k < 1:
        raise ValueError(f"cell count must be >= 1, got {k}")
    mk = transfer_power(cell, lam, k)
    b1 = cell.b1
    num = mk.delta - mk.alpha - 1j * (b1 * mk.gamma + mk.beta / b1)
    den = mk.delta + mk.alpha + 1j * (b1 * mk.gamma - mk.beta / b1)
    if np.ndim(lam) == 0:
        if abs(den) < _POLE_RTOL * max(1.0, abs(num)):
            raise PoleProximityError(lam)
        return complex(num) / complex(den)
    with np.errstate(divide="ignore", invalid="ignore"):
        return num / den


def transmission_sq(cell: UnitCell, lam, k: int):
    """Transmission probability |t_k|^2 at real frequencies.

    |t_k|^2 = 4 / (U_{k-1}(F)^2 ((a-d)^2 + (b1 g + b/b1)^2) + 4), which is
    finite for every real frequency, band edges included, and lies in
    (0, 1].
    """
    if k < 1:
        raise ValueError(f"cell count must be >= 1, got {k}")
    lam = np.asarray(lam)
    if np.iscomplexobj(lam):
        if np.any(lam.imag != 0.0):
            raise ValueError("transmission probability is defined for real frequencies")
        lam = lam.real
    m = monodromy(cell, lam)
    f = 0.5 * (m.alpha + m.delta)
    u, _ = _cheb_pair(f, k)
    b1 = cell.b1
    q = (m.alpha - m.delta) ** 2 + (b1 * m.gamma + m.beta / b1) ** 2
    out = 4.0 / (u * u * q + 4.0)
    return float(out) if out.ndim == 0 else out


def perfect_transmission_frequencies(cell: UnitCell, band: Band, k: int) -> list[float]:
    """The k-1 in-band frequencies of unit transmission, plus any one-cell
    transparency frequency that falls inside the band.

    The k-1 roots solve U_{k-1}(F(lam)) = 0, i.e. F(lam) = cos(m*pi/k) for
    m = 1..k-1 on the band where F is monotone between -1 and +1; each is
    located by bisection.
    """
    if k < 2:
        raise ValueError(f"need at least two cells, got k={k}")
    _validate_band(cell, band)

    f_of = lambda x: float(lyapunov(cell, x))
    f_lo, f_hi = f_of(band.lo), f_of(band.hi)
    roots: list[float] = []
    for m in range(1, k):
        target = math.cos(m * math.pi / k)
        if (f_lo - target) * (f_hi - target) > 0.0:
            continue
        roots.append(_bisect_on(lambda x: f_of(x) - target, band.lo, band.hi))

    for lam0 in transparency_frequencies(cell, band.hi):
        if band.lo + 1e-9 < lam0 < band.hi - 1e-9:
            if all(abs(lam0 - r) > 1e-9 for r in roots):
                roots.append(lam0)
    return sorted(roots)


def reflection_half_infinite(cell: UnitCell, lam):
    """Reflection coefficient of the half-infinite periodic medium.

    r = ((a - d) + i(b/b1 + b1 g)) / (2i sin(theta) + i(b/b1 - b1 g)) with
    sin(theta) realized through the selected multiplier,
    sin(theta) = (mu_plus - 1/mu_plus)/(2i).  On gaps |r| = 1.  At real
    frequencies strictly inside a band the upper-boundary limit is
    returned and a BoundaryValueWarning is issued, since the finite-slab
    coefficients converge to it only in an averaged sense there.
    """
    lam = complex(lam)
    bd = bloch(cell, lam)
    if bd.regime is Regime.DEGENERATE_EDGE:
        raise EdgeDegeneracyError(f"reflection limit indeterminate at degenerate edge {lam}")
    m = monodromy(cell, lam)
    b1 = cell.b1
    sin_theta = (bd.mu_plus - 1.0 / bd.mu_plus) / 2j
    num = (m.alpha - m.delta) + 1j * (m.beta / b1 + b1 * m.gamma)
    den = 2j * sin_theta + 1j * (m.beta / b1 - b1 * m.gamma)
    if abs(den) < _POLE_RTOL * max(1.0, abs(num)):
        raise EdgeDegeneracyError(f"reflection limit indeterminate at {lam}")
    if bd.regime is Regime.BAND:
        warnings.warn("in-band value is the upper-half-plane boundary limit",
                      BoundaryValueWarning, stacklevel=2)
    return complex(num) / complex(den)


def _validate_band(cell: UnitCell, band: Band) -> None:
    f_of = lambda x: float(lyapunov(cell, x))
    if band.lo >= band.hi:
        raise BandMismatchError(f"band interval ill ordered: {band}")
    if abs(abs(f_of(band.lo)) - 1.0) > 1e-6 or abs(abs(f_of(band.hi)) - 1.0) > 1e-6:
        raise BandMismatchError(f"band edges do not satisfy |F| = 1 for this cell: {band}")
    if abs(f_of(0.5 * (band.lo + band.hi))) >= 1.0:
        raise BandMismatchError(f"band midpoint is not inside a band for this cell: {band}")


def _bisect_on(fn, a: float, b: float, tol: float = 1e-12) -> float:
    fa, fb = fn(a), fn(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)
