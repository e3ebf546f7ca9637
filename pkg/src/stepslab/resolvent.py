"""Resonance spectrum of the finite slab.

Resonances are the lower-half-plane poles of the meromorphically
continued resolvent, equivalently of the slab reflection coefficient.
They solve d * Q(lam) = 1 where Q is the terminal value of a bounded
linear-fractional recursion over the 2k interfaces; the equivalent
interface-chain determinant vanishes there but grows like (b1+b2)^(2k),
so the recursion form is the root-finding target and the determinant is
kept as a low-k cross check and as the argument-principle counter.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (BandMismatchError, ContourError,
                     ContourThroughZeroError, DeterminantOverflowError,
                     EmptyWindowWarning, InvalidRangeError,
                     PoleProximityError, RecursionPoleError)
from .medium import UnitCell
from .monodromy import Band, find_bands
from .scattering import perfect_transmission_frequencies

#: A converged root must satisfy |d*Q - 1| below this.
RESIDUAL_TOL = 1e-10

#: Distinct roots closer than this (absolute, in lambda) are merged.
DEDUP_RADIUS = 1e-6

#: Roots with Im(lambda) above this are rejected as spurious.
_IM_CEILING = -1e-12

_NEWTON_MAX_ITER = 50
_POLE_RTOL = 1e-13


@dataclass(frozen=True)
class Window:
    """Rectangular search region Re in [re_min, re_max], Im in [im_min, 0)."""

    re_min: float
    re_max: float
    im_min: float

    def __post_init__(self):
        if self.re_min < 0.0:
            raise InvalidRangeError(f"re_min must be >= 0, got {self.re_min}")
        if self.re_max <= self.re_min:
            raise InvalidRangeError(f"window ill ordered: [{self.re_min}, {self.re_max}]")
        if self.im_min >= 0.0:
            raise InvalidRangeError(f"im_min must be negative, got {self.im_min}")


@dataclass(frozen=True)
class Resonance:
    """One scattering pole with solver metadata."""

    lam: complex
    residual: float
    band_index: int | None
    newton_iters: int
    seed: complex


def default_im_floor(cell: UnitCell) -> float:
    """Default search depth; empirically below every first-band resonance
    for k >= 2 at desk-scale parameters (the one-cell depth is
    ln|d|/(b2 x2), and depths shrink as k grows)."""
    return -1.0 / (cell.b2 * cell.x2)


def q_recursion(cell: UnitCell, lam, k: int, check_poles: bool = True):
    """Terminal recursion value Q over the 2k interfaces of a k-cell slab.

    Starting from Q = d * exp(2i lam b2 x2), each additional cell applies
    an odd step with phase exp(2i lam b1 (1-x2)) and contrast -d, then an
    even step with phase exp(2i lam b2 x2) and contrast +d.  For
    Im lam >= 0 every intermediate value stays inside the unit disk.
    Accepts scalar or array lam; intermediate-pole checking applies to
    scalars only (array mode lets inf/nan propagate).
    """
    if k < 1:
        raise ValueError(f"cell count must be >= 1, got {k}")
    d = cell.contrast
    scalar = np.ndim(lam) == 0
    ph_even = np.exp(2j * np.asarray(lam) * cell.b2 * cell.x2)
    ph_odd = np.exp(2j * np.asarray(lam) * cell.b1 * (1.0 - cell.x2))
    q = d * ph_even
    with np.errstate(divide="ignore", invalid="ignore"):
        for j in range(2, k + 1):
            den = 1.0 - d * q
            if scalar and check_poles and abs(den) < 1e-14:
                raise RecursionPoleError(lam, 2 * j - 1)
            q = ph_odd * (-d + q) / den
            den = 1.0 + d * q
            if scalar and check_poles and abs(den) < 1e-14:
                raise RecursionPoleError(lam, 2 * j)
            q = ph_even * (d + q) / den
    return complex(q) if scalar else q


def q_sequence(cell: UnitCell, lam: complex, k: int) -> list[complex]:
    """All intermediate recursion values Q_2, Q_3, ..., Q_2k (scalar lam)."""
    d = cell.contrast
    ph_even = np.exp(2j * complex(lam) * cell.b2 * cell.x2)
    ph_odd = np.exp(2j * complex(lam) * cell.b1 * (1.0 - cell.x2))
    q = d * ph_even
    out = [q]
    for j in range(2, k + 1):
        den = 1.0 - d * q
        if abs(den) < 1e-14:
            raise RecursionPoleError(lam, 2 * j - 1)
        q = ph_odd * (-d + q) / den
        out.append(q)
        den = 1.0 + d * q
        if abs(den) < 1e-14:
            raise RecursionPoleError(lam, 2 * j)
        q = ph_even * (d + q) / den
        out.append(q)
    return out


class ChainDeterminants(NamedTuple):
    value: complex
    companion: complex
    peak: float


def _chain_position(m: int, x2: float) -> float:
    """Interface position of index m in the alternating chain, m >= 1."""
    if m == 1:
        return 0.0
    if m % 2 == 0:
        return m // 2 - 1 + x2
    return (m - 1) // 2


def chain_determinants(cell: UnitCell, lam, k: int) -> ChainDeterminants:
    """Boundary-matching determinant of the (2k+1)-step interface chain.

    The chain alternates b1, b2, b1, ..., b1 with interfaces at
    0, x2, 1, 1+x2, ..., k-1, k-1+x2.  The determinant is entire in lam
    and vanishes exactly at the resonances; the companion determinant
    drives the two-term recursion.  ``peak`` records the largest
    intermediate magnitude for scale-aware zero tests.  Raises on
    overflow past 1e300 (the determinant grows like (b1+b2)^(2k)).
    """
    if k < 1:
        raise ValueError(f"cell count must be >= 1, got {k}")
    lam = np.asarray(lam, dtype=complex)
    b1, b2, x2 = cell.b1, cell.b2, cell.x2
    det = (b1 + b2) * np.ones_like(lam)
    comp = (b2 - b1) * np.ones_like(lam)
    peak = float(np.max(np.abs(det)))
    n_steps = 2 * k + 1
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(3, n_steps + 1):
            b_new = b1 if n % 2 == 1 else b2
            b_prev = b2 if n % 2 == 1 else b1
            x_prev = _chain_position(n - 1, x2)
            e_new = np.exp(1j * lam * b_new * x_prev)
            e_prev = np.exp(1j * lam * b_prev * x_prev)
            diff, total = b_prev - b_new, b_prev + b_new
            det, comp = (e_new * (diff * e_prev * comp - total * det / e_prev),
                         (diff * det / e_prev - total * e_prev * comp) / e_new)
            m = max(float(np.max(np.abs(det))), float(np.max(np.abs(comp))))
            if not math.isfinite(m) or m > 1e300:
                raise DeterminantOverflowError(
                    f"determinant chain overflowed at step n={n}; use the recursion route")
            peak = max(peak, m)
    if lam.ndim == 0:
        return ChainDeterminants(complex(det), complex(comp), peak)
    return ChainDeterminants(det, comp, peak)


def resonances_k1(cell: UnitCell, re_max: float, re_min: float = 0.0) -> list[Resonance]:
    """Closed-form one-cell resonances with Re(lam) in [re_min, re_max].

    The one-cell condition d^2 exp(2i lam b2 x2) = 1 puts all roots on
    the horizontal line Im(lam) = ln|d|/(b2 x2) at Re(lam) = m*pi/(b2 x2),
    m = 0, 1, 2, ...  A homogeneous cell has no resonances.
    """
    if cell.homogeneous:
        return []
    if re_max < re_min or re_min < 0.0:
        raise InvalidRangeError(f"bad window [{re_min}, {re_max}]")
    d = cell.contrast
    depth = math.log(abs(d)) / (cell.b2 * cell.x2)
    spacing = math.pi / (cell.b2 * cell.x2)
    bands = find_bands(cell, re_max + spacing)
    out = []
    m = int(math.floor(re_min / spacing))
    while m * spacing <= re_max + 1e-12:
        re = m * spacing
        if re >= re_min - 1e-12:
            lam = complex(re, depth)
            resid = abs(d * q_recursion(cell, lam, 1) - 1.0)
            out.append(Resonance(lam, resid, _assign_band(bands, re), 0, lam))
        m += 1
    return out


def _assign_band(bands: list[Band], re: float, tol: float = 1e-6) -> int | None:
    for b in bands:
        if b.contains(re, tol):
            return b.index
    return None


def _resonance_condition(cell: UnitCell, k: int, z):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return cell.contrast * q_recursion(cell, z, k, check_poles=False) - 1.0


def _newton_batch(cell: UnitCell, k: int, seeds: np.ndarray):
    """Vectorized damped-free Newton on the resonance condition.

    The derivative is a central finite difference with step
    1e-7*(1+|z|); the condition is analytic away from intermediate
    recursion poles, so a real-direction difference equals the complex
    derivative.  Seeds that start on an intermediate pole are nudged by
    1e-5 once; runs that lose finiteness are dropped.  Converged points
    receive one extra polishing step, which drives residuals toward
    machine level.
    """
    z = seeds.astype(complex).copy()
    h = _resonance_condition(cell, k, z)
    bad = ~np.isfinite(h)
    if np.any(bad):
        z[bad] += 1e-5
        h[bad] = _resonance_condition(cell, k, z[bad])
    alive = np.isfinite(h)
    iters = np.zeros(z.shape, dtype=int)
    polish = np.zeros(z.shape, dtype=int)
    for it in range(1, _NEWTON_MAX_ITER + 1):
        idx = np.nonzero(alive)[0]
        if idx.size == 0:
            break
        za = z[idx]
        step = 1e-7 * (1.0 + np.abs(za))
        dh = (_resonance_condition(cell, k, za + step)
              - _resonance_condition(cell, k, za - step)) / (2.0 * step)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            znew = za - h[idx] / dh
        hnew = _resonance_condition(cell, k, znew)
        ok = np.isfinite(znew) & np.isfinite(hnew)
        good = idx[ok]
        z[good] = znew[ok]
        h[good] = hnew[ok]
        iters[good] = it
        alive[idx[~ok]] = False
        hit = good[np.abs(hnew[ok]) <= RESIDUAL_TOL]
        polish[hit] += 1
        # freeze only after one extra step past the tolerance
        alive[hit[polish[hit] >= 2]] = False
    resid = np.abs(h)
    resid[~np.isfinite(resid)] = np.inf
    return z, resid, iters


def find_resonances(cell: UnitCell, k: int, window: Window) -> list[Resonance]:
    """All resonances of the k-cell slab inside the window.

    Newton seeds form a rectangular grid: real parts sample each band
    (plus small edge margins) at spacing width/(4k) and are anchored at
    the perfect-transmission frequencies, since resonance real parts are
    confined to the bands and sit below the transmission peaks; a coarse
    grid over the gaps acts as a negative control.  Imaginary parts use
    the ladder {-0.02, -0.1, -0.3, -0.7}/(2 b2 x2), which tracks the
    one-cell depth scale, extended by k-scaled shallow rungs for the
    near-edge roots.  Converged roots are filtered to the window,
    required to satisfy the residual tolerance, deduplicated, and
    assigned a band by real-part membership.
    """
    if k < 1:
        raise ValueError(f"cell count must be >= 1, got {k}")
    if cell.homogeneous:
        return []
    bands = find_bands(cell, window.re_max)
    bands_in = [b for b in bands
                if b.hi > window.re_min - 1e-9 and b.lo < window.re_max + 1e-9]
    if not bands_in:
        warnings.warn("window intersects no spectral band", EmptyWindowWarning, stacklevel=2)
        return []

    im_scale = 1.0 / (2.0 * cell.b2 * cell.x2)
    # the four deep rungs track the one-cell depth scale; the k-scaled
    # shallow rungs keep the near-edge roots, whose depth shrinks like
    # 1/k^2, inside the Newton basin
    rungs = np.concatenate([[0.02, 0.1, 0.3, 0.7],
                            np.array([2.0, 0.6, 0.2]) / (k * k)])
    depths = -np.unique(rungs) * im_scale

    re_parts: list[np.ndarray] = []
    for b in bands_in:
        spacing = b.width / (4.0 * k)
        margin = max(spacing, 0.02 * b.width)
        lo = max(b.lo - margin, 0.0)
        hi = min(b.hi + margin, window.re_max + margin)
        n = int(math.ceil((hi - lo) / spacing)) + 1
        re_parts.append(np.linspace(lo, hi, n))
        # resonances sit directly below the transmission peaks and the
        # band edges; anchoring seeds there keeps the shallow roots near
        # the edges from slipping between grid points as k grows
        anchors = [b.lo, b.hi]
        if k >= 2:
            try:
                anchors.extend(perfect_transmission_frequencies(cell, b, k))
            except BandMismatchError:
                pass  # band clipped by the scan limit; grid seeds only
        re_parts.append(np.asarray(anchors))
    # negative control over the gaps
    for left, right in zip(bands_in[:-1], bands_in[1:]):
        if right.lo - left.hi > 1e-6:
            re_parts.append(np.linspace(left.hi, right.lo, 7)[1:-1])
    re_pts = np.concatenate(re_parts)
    seeds = (re_pts[:, None] + 1j * depths[None, :]).ravel()

    roots, resid, iters = _newton_batch(cell, k, seeds)

    order = np.argsort(resid, kind="stable")
    kept: list[tuple[complex, float, int, complex]] = []
    for i in order:
        if resid[i] > RESIDUAL_TOL:
            break
        lam = complex(roots[i])
        if lam.imag >= _IM_CEILING or lam.imag < window.im_min - 1e-9:
            continue
        if lam.real < window.re_min - 1e-9 or lam.real > window.re_max + 1e-9:
            continue
        if any(abs(lam - other[0]) <= DEDUP_RADIUS for other in kept):
            continue
        kept.append((lam, float(resid[i]), int(iters[i]), complex(seeds[i])))

    kept.sort(key=lambda t: (t[0].real, t[0].imag))
    return [Resonance(lam, r, _assign_band(bands, lam.real), it, seed)
            for lam, r, it, seed in kept]


def reflection_via_q(cell: UnitCell, lam, k: int):
    """Slab reflection through the interface recursion: r = (d - Q)/(1 - d Q).

    Must agree with the propagator route; its poles in the lower half
    plane are exactly the resonances.  Scalar lam raises PoleProximity at
    a pole; arrays let inf propagate.
    """
    d = cell.contrast
    q = q_recursion(cell, lam, k, check_poles=np.ndim(lam) == 0)
    num = d - q
    den = 1.0 - d * q
    if np.ndim(lam) == 0:
        if abs(den) < _POLE_RTOL * max(1.0, abs(num)):
            raise PoleProximityError(lam)
        return num / den
    with np.errstate(divide="ignore", invalid="ignore"):
        return num / den


def count_zeros_rectangle(cell: UnitCell, k: int, re_lo: float, re_hi: float,
                          im_lo: float, im_hi: float) -> int:
    """Number of resonances in a rectangle by the argument principle.

    Accumulates the phase winding of the entire interface-chain
    determinant along the rectangle boundary, doubling the sampling until
    every phase increment is unambiguous (< pi/2) and the total is within
    0.01 of an integer.  Being entire, the determinant has no poles to
    corrupt the count, unlike the recursion quotient.
    """
    if not (re_lo < re_hi and im_lo < im_hi):
        raise InvalidRangeError("contour rectangle is ill ordered")
    n = 256
    while n <= 1 << 17:
        contour = np.concatenate([
            np.linspace(re_lo, re_hi, n, endpoint=False) + 1j * im_lo,
            re_hi + 1j * np.linspace(im_lo, im_hi, n, endpoint=False),
            np.linspace(re_hi, re_lo, n, endpoint=False) + 1j * im_hi,
            re_lo + 1j * np.linspace(im_hi, im_lo, n, endpoint=False),
        ])
        contour = np.append(contour, contour[0])
        vals = chain_determinants(cell, contour, k).value
        if np.min(np.abs(vals)) == 0.0:
            raise ContourThroughZeroError("determinant vanishes on the counting contour")
        steps = np.angle(vals[1:] / vals[:-1])
        if np.max(np.abs(steps)) < 0.5 * math.pi:
            total = float(np.sum(steps)) / (2.0 * math.pi)
            nearest = round(total)
            if abs(total - nearest) < 0.01:
                return int(nearest)
        n *= 2
    # refinement never stabilized: a zero sits essentially on the contour
    raise ContourThroughZeroError(
        "phase winding failed to stabilize; a zero lies on or next to the contour")


def audit_count(cell: UnitCell, k: int, band: Band, contour_margin: float = 0.05,
                im_floor: float | None = None) -> int:
    """Newton-independent resonance count for one band.

    Counts zeros inside [band.lo - margin, band.hi + margin] x
    [im_floor, -1e-9] by the argument principle.  If the contour passes
    too close to a zero the margin is perturbed and the count retried, at
    most five times.
    """
    if contour_margin <= 0.0:
        raise InvalidRangeError(f"margin must be positive, got {contour_margin}")
    if im_floor is None:
        im_floor = default_im_floor(cell)
    last: ContourThroughZeroError | None = None
    for attempt in range(5):
        margin = contour_margin * (1.0 + 0.17 * attempt)
        try:
            return count_zeros_rectangle(cell, k, band.lo - margin, band.hi + margin,
                                         im_floor, -1e-9)
        except ContourThroughZeroError as err:
            last = err
    raise last


class ConvergenceRow(NamedTuple):
    k: int
    count: int
    max_im: float | None
    min_im: float | None


def convergence_study(cell: UnitCell, band: Band, k_list: list[int],
                      im_floor: float | None = None) -> list[ConvergenceRow]:
    """Depth of the band's resonances as the slab grows.

    For each k the full resonance set over the band window is computed
    and the extreme imaginary parts recorded; max_im must climb toward
    zero as k increases.
    """
    if any(k < 2 for k in k_list):
        raise ValueError("convergence study requires k >= 2")
    if any(nxt < prev for prev, nxt in zip(k_list, k_list[1:])):
        raise ValueError("k_list must be non-decreasing")
    if im_floor is None:
        im_floor = default_im_floor(cell)
    pad = 1e-6 + 1e-3 * band.width
    rows = []
    for k in k_list:
        found = find_resonances(cell, k, Window(max(band.lo - pad, 0.0),
                                                band.hi + pad, im_floor))
        if found:
            ims = [r.lam.imag for r in found]
            rows.append(ConvergenceRow(k, len(found), max(ims), min(ims)))
        else:
            rows.append(ConvergenceRow(k, 0, None, None))
    return rows
