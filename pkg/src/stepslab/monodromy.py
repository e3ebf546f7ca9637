"""Cell propagator, dispersion function, Bloch multipliers and bands.

The propagator of Cauchy data (psi, a*psi'/lambda) across one cell is a
unimodular 2x2 matrix whose entries are entire in the frequency lambda.
Half its trace is the dispersion function F(lambda): real frequencies
with |F| < 1 form the spectral bands of the infinite periodic medium,
|F| > 1 the gaps, and |F| = 1 the band edges.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidRangeError
from .medium import UnitCell

#: |F'| below this at a point with |F| = 1 marks a degenerate edge
#: (two bands touching); the curvature must then be above it.
EDGE_DERIVATIVE_TOL = 1e-8

#: |F^2 - 1| below this counts as "on a band edge" for multiplier selection.
_EDGE_F_TOL = 1e-12

#: Bisection tolerance for band edge locations (absolute, in lambda).
_EDGE_LOCATION_TOL = 1e-12


@dataclass(frozen=True)
class MonodromyMatrix:
    """Propagator over one period in the (psi, a*psi'/lambda) basis.

    Entries may be scalars or equally shaped numpy arrays (one matrix per
    frequency).  The determinant is 1 for every frequency.
    """

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    @property
    def det(self):
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def trace(self):
        return self.alpha + self.delta

    def as_array(self) -> np.ndarray:
        """2x2 complex array; scalar entries only."""
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]], dtype=complex)


class Regime(Enum):
    BAND = "band"
    GAP = "gap"
    NONDEGENERATE_EDGE = "nondegenerate_edge"
    DEGENERATE_EDGE = "degenerate_edge"


class EdgeType(Enum):
    DEGENERATE = "degenerate"
    NONDEGENERATE = "nondegenerate"


@dataclass(frozen=True)
class BlochData:
    """Multiplier pair and Weyl functions at one frequency.

    ``mu_plus`` is the multiplier selected by continuity from the upper
    half plane: contractive for Im lambda > 0, unimodular on bands,
    the in-disk real root on gaps, and the expanding continuation for
    Im lambda < 0.  ``m_plus``/``m_minus`` are None when the propagator
    is +-identity (degenerate edge), where the eigenvectors degenerate.
    """

    lyapunov: complex
    mu_plus: complex
    mu_minus: complex
    m_plus: complex | None
    m_minus: complex | None
    regime: Regime | None


@dataclass(frozen=True)
class Band:
    """Maximal interval of real frequencies with |F| < 1.

    ``hi_type`` is None when the band was clipped by the scan limit
    rather than terminated by an actual edge.
    """

    lo: float
    hi: float
    lo_type: EdgeType | None
    hi_type: EdgeType | None
    index: int

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol


def monodromy(cell: UnitCell, lam) -> MonodromyMatrix:
    """One-cell propagator at frequency lam (scalar or array, any complex).

    Entries are real for real lam.  det = 1 identically.
    """
    b1, b2 = cell.b1, cell.b2
    arg_sum = lam * cell.transit_time
    arg_diff = lam * (b1 * (1.0 - cell.x2) - b2 * cell.x2)
    cs, cd = np.cos(arg_sum), np.cos(arg_diff)
    ss, sd = np.sin(arg_sum), np.sin(arg_diff)
    p, m = b2 + b1, b2 - b1
    alpha = (p * cs + m * cd) / (2.0 * b2)
    beta = (p * ss - m * sd) / 2.0
    gamma = -(p * ss + m * sd) / (2.0 * b1 * b2)
    delta = (p * cs - m * cd) / (2.0 * b1)
    return MonodromyMatrix(alpha, beta, gamma, delta)


def lyapunov(cell: UnitCell, lam):
    """Dispersion function F(lam), half the propagator trace.

    F(lam) = ((rho+1)/2) cos(lam*tau) - ((rho-1)/2) cos(lam*skew) with
    tau the cell transit time and skew the layer transit-time difference.
    """
    rho = cell.mismatch
    return 0.5 * ((rho + 1.0) * np.cos(lam * cell.transit_time)
                  - (rho - 1.0) * np.cos(lam * cell.transit_skew))


def lyapunov_derivative(cell: UnitCell, lam):
    """dF/dlam, analytically differentiated."""
    rho = cell.mismatch
    tt, ts = cell.transit_time, cell.transit_skew
    return 0.5 * (-(rho + 1.0) * tt * np.sin(lam * tt)
                  + (rho - 1.0) * ts * np.sin(lam * ts))


def lyapunov_curvature(cell: UnitCell, lam):
    """d2F/dlam2, analytically differentiated."""
    rho = cell.mismatch
    tt, ts = cell.transit_time, cell.transit_skew
    return 0.5 * (-(rho + 1.0) * tt * tt * np.cos(lam * tt)
                  + (rho - 1.0) * ts * ts * np.cos(lam * ts))


def _cheb_pair(f, k: int):
    """U_{k-1}(f) and U_{k-2}(f) of the recurrence U_j = 2f U_{j-1} - U_{j-2}.

    U_0 = 1, U_1 = 2f, so U_j(cos t) = sin((j+1)t)/sin(t).  The recurrence
    is entire in f, which keeps band edges (sin t -> 0) regular.
    """
    u = 1.0 + 0.0 * f
    u_prev = 0.0 * f
    for _ in range(k - 1):
        u, u_prev = 2.0 * f * u - u_prev, u
    return u, u_prev


def transfer_power(cell: UnitCell, lam, k: int) -> MonodromyMatrix:
    """Propagator over k cells: M^k = U_{k-1}(F) M - U_{k-2}(F) I.

    Never forms matrix products or an explicit Bloch phase; the
    Chebyshev-style recurrence in F is branch free in all of the
    complex plane.
    """
    if k < 1:
        raise ValueError(f"cell count must be >= 1, got {k}")
    m = monodromy(cell, lam)
    f = 0.5 * (m.alpha + m.delta)
    u, u_prev = _cheb_pair(f, k)
    return MonodromyMatrix(u * m.alpha - u_prev, u * m.beta,
                           u * m.gamma, u * m.delta - u_prev)


def _select_band_multiplier(cell: UnitCell, lam_re: float, f: float) -> complex:
    """Contractive-limit multiplier at a real band frequency.

    Approaching from the upper half plane, the contractive root tends to
    F - i*sign(F')*sqrt(1-F^2); the sign follows from perturbing F by
    i*eps*F'.  At an interior critical point of F the sign is resolved by
    an explicit small excursion into the upper half plane.
    """
    s = math.sqrt(max(1.0 - f * f, 0.0))
    df = lyapunov_derivative(cell, lam_re)
    if abs(df) > 1e-12:
        sgn = math.copysign(1.0, df)
        return complex(f, -sgn * s)
    fc = complex(lyapunov(cell, lam_re + 1e-6j))
    root = cmath.sqrt(fc * fc - 1.0)
    small = fc + root if abs(fc + root) <= abs(fc - root) else fc - root
    cand = (complex(f, -s), complex(f, s))
    return min(cand, key=lambda mu: abs(mu - small))


def bloch(cell: UnitCell, lam) -> BlochData:
    """Multipliers, Weyl functions and spectral regime at one frequency.

    The multipliers solve mu^2 - 2 F mu + 1 = 0; mu_minus is returned as
    1/mu_plus so the product is exactly 1.  The regime is classified for
    real frequencies only (None otherwise).
    """
    lam = complex(lam)
    m = monodromy(cell, lam)
    f = 0.5 * (m.alpha + m.delta)
    fc = complex(f)
    regime = None

    if lam.imag != 0.0:
        root = cmath.sqrt(fc * fc - 1.0)
        big = fc + root if abs(fc + root) >= abs(fc - root) else fc - root
        small = 1.0 / big
        if lam.imag > 0.0:
            mu_plus, mu_minus = small, big
        else:
            # analytic continuation across bands: Im(theta) < 0 below the axis
            mu_plus, mu_minus = big, small
    else:
        f_re = fc.real
        if abs(f_re * f_re - 1.0) <= _EDGE_F_TOL:
            sign = 1.0 if f_re >= 0.0 else -1.0
            mu_plus = mu_minus = complex(sign)
            if abs(lyapunov_derivative(cell, lam.real)) < EDGE_DERIVATIVE_TOL:
                regime = Regime.DEGENERATE_EDGE
            else:
                regime = Regime.NONDEGENERATE_EDGE
        elif abs(f_re) < 1.0:
            mu_plus = _select_band_multiplier(cell, lam.real, f_re)
            mu_minus = 1.0 / mu_plus
            regime = Regime.BAND
        else:
            root = math.sqrt(f_re * f_re - 1.0)
            big = f_re + root if abs(f_re + root) >= abs(f_re - root) else f_re - root
            mu_plus = complex(1.0 / big)
            mu_minus = complex(big)
            regime = Regime.GAP

    beta, gamma = complex(m.beta), complex(m.gamma)
    if abs(beta) > 1e-12:
        m_plus = (mu_plus - complex(m.alpha)) / beta
        m_minus = (mu_minus - complex(m.alpha)) / beta
    elif abs(gamma) > 1e-12:
        m_plus = gamma / (mu_plus - complex(m.delta))
        m_minus = gamma / (mu_minus - complex(m.delta))
    else:
        # propagator is +-identity: eigenvectors degenerate, Weyl data undefined
        m_plus = m_minus = None

    return BlochData(fc, mu_plus, mu_minus, m_plus, m_minus, regime)


def _bisect(fn, a: float, b: float, tol: float) -> float:
    fa, fb = fn(a), fn(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError("bisection bracket does not change sign")
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


def _classify_edge(cell: UnitCell, lam: float) -> EdgeType:
    if abs(lyapunov_derivative(cell, lam)) < EDGE_DERIVATIVE_TOL:
        return EdgeType.DEGENERATE
    return EdgeType.NONDEGENERATE


def find_bands(cell: UnitCell, lambda_max: float) -> list[Band]:
    """All bands in (0, lambda_max], edges located to 1e-10 and classified.

    Crossings of F through +-1 are bracketed on a grid finer than the
    fastest oscillation of F and bisected; tangencies (degenerate edges,
    where two bands touch) are located as zeros of F' and split bands.
    lambda = 0 is excluded.  A homogeneous cell has no interfaces and is
    reported as a single clipped band.
    """
    if lambda_max <= 0.0:
        raise InvalidRangeError(f"lambda_max must be positive, got {lambda_max}")
    if cell.contrast == 0.0:
        return [Band(0.0, lambda_max, EdgeType.DEGENERATE, None, 1)]

    step = min(0.01, (math.pi / cell.transit_time) / 50.0)
    xs = np.arange(step, lambda_max, step)
    xs = np.append(xs, lambda_max)
    fs = lyapunov(cell, xs)
    dfs = lyapunov_derivative(cell, xs)

    f_of = lambda x: float(lyapunov(cell, x))
    df_of = lambda x: float(lyapunov_derivative(cell, x))

    edges: list[float] = []

    # crossings of F = +1 and F = -1
    for target in (1.0, -1.0):
        g = fs - target
        hits = np.nonzero(g[:-1] * g[1:] < 0.0)[0]
        for i in hits:
            edges.append(_bisect(lambda x: f_of(x) - target, xs[i], xs[i + 1], _EDGE_LOCATION_TOL))

    # critical points of F: tangency edges, plus narrow features the grid
    # sign test may have stepped over
    crit_hits = np.nonzero(dfs[:-1] * dfs[1:] < 0.0)[0]
    for i in crit_hits:
        lam_c = _bisect(df_of, xs[i], xs[i + 1], _EDGE_LOCATION_TOL)
        f_c = f_of(lam_c)
        if abs(abs(f_c) - 1.0) <= 1e-9:
            edges.append(lam_c)
        elif abs(f_c) > 1.0:
            # extremum pokes past +-1 between grid points: two crossings
            target = 1.0 if f_c > 1.0 else -1.0
            for a, b in ((xs[i], lam_c), (lam_c, xs[i + 1])):
                if (f_of(a) - target) * (f_of(b) - target) < 0.0:
                    edges.append(_bisect(lambda x: f_of(x) - target, a, b, _EDGE_LOCATION_TOL))

    edges = sorted(e for e in edges if 0.0 < e < lambda_max)
    deduped: list[float] = []
    for e in edges:
        if not deduped or e - deduped[-1] > 1e-9:
            deduped.append(e)

    boundaries = [0.0] + deduped + [lambda_max]
    bands: list[Band] = []
    for a, b in zip(boundaries[:-1], boundaries[1:]):
        if b - a <= 1e-9:
            continue
        if abs(f_of(0.5 * (a + b))) >= 1.0:
            continue
        lo_type = _classify_edge(cell, a)
        if b == lambda_max and abs(abs(f_of(b)) - 1.0) > 1e-9:
            hi_type = None  # clipped by the scan limit, not a real edge
        else:
            hi_type = _classify_edge(cell, b)
        bands.append(Band(a, b, lo_type, hi_type, len(bands) + 1))
    return bands
