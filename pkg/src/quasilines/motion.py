"""Holomorphic motions of a hyperbolic geodesic by translation in strip
coordinates, and tracing of the level lines they sweep out.

Given a conformal map ``psi`` from the strip onto a domain with
``psi(R) = gamma``, the motion ``Phi(lam, a) = psi(psi^{-1}(a) + lam)`` moves
``gamma`` onto the level lines of hyperbolic distance (real translations do
nothing to the curve; imaginary ones move it across the domain).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .conformal import AnalyticMap
from .errors import DomainError
from .strip import HALF_WIDTH, distance_for_offset, harmonic_height, level_line_bound, offset_for_distance

DEFAULT_X_RANGE = (-6.0, 6.0)
DEFAULT_SAMPLES = 601
ENDPOINT_CUTOFFS = (12.0, 24.0, 48.0, 96.0)


@dataclass(frozen=True, eq=False)
class Curve:
    """An ordered polyline sample with one parameter value per point."""

    points: np.ndarray
    params: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        par = np.asarray(self.params, dtype=float).ravel()
        if pts.shape != par.shape:
            raise DomainError("points and params must have the same length")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(par))):
            raise DomainError("curve samples must be finite")
        if pts.size > 1:
            if np.any(np.diff(par) <= 0):
                raise DomainError("curve params must be strictly increasing")
            if np.any(pts[1:] == pts[:-1]):
                raise DomainError("consecutive curve points must differ")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "params", par)

    def __len__(self):
        return self.points.size

    @property
    def x(self):
        return self.points.real

    @property
    def y(self):
        return self.points.imag

    def with_meta(self, **extra):
        return Curve(self.points, self.params, {**self.meta, **extra})


@dataclass(frozen=True)
class StripMotion:
    """The motion ``Phi(lam, a) = psi(psi^{-1}(a) + lam)`` parametrised by ``lam`` in the strip."""

    psi: AnalyticMap

    def __call__(self, lam, a):
        return motion_point(self, lam, a)


def motion_point(motion, lam, a):
    if np.all(np.asarray(lam) == 0):
        # Phi(0, .) is the identity; skip the round trip through psi^{-1}
        return np.array(a, dtype=complex) if np.ndim(a) else complex(a)
    z = np.asarray(motion.psi.inverse(a), dtype=complex) + lam
    if np.any(np.abs(z.imag) >= HALF_WIDTH):
        raise DomainError("translated point leaves the strip; the motion is undefined there")
    return motion.psi(z)


def _strip_samples(x_range, n):
    if n < 2:
        raise DomainError("need at least two samples")
    lo, hi = map(float, x_range)
    if not hi > lo:
        raise DomainError("x_range must be increasing")
    return np.linspace(lo, hi, int(n))


def trace_strip_line(psi, height, x_range=DEFAULT_X_RANGE, n=DEFAULT_SAMPLES, **meta):
    """Image under ``psi`` of the horizontal line ``Im z = height``."""
    height = float(height)
    if abs(height) >= HALF_WIDTH:
        raise DomainError(f"height must satisfy |y| < pi/2, got {height!r}")
    x = _strip_samples(x_range, n)
    pts = psi(x + 1j * height)
    return Curve(pts, x, {"map": psi.name, "height": height, **meta})


def trace_hyperbolic_level(psi, c, side=1, x_range=DEFAULT_X_RANGE, n=DEFAULT_SAMPLES):
    """The ``c``-level line of hyperbolic distance from ``gamma = psi(R)`` on one side."""
    if side not in (1, -1):
        raise DomainError("side must be +1 or -1")
    t = float(offset_for_distance(c))
    return trace_strip_line(psi, side * t, x_range, n, level="hyperbolic", c=float(c), side=side)


def trace_harmonic_level(psi, b, x_range=DEFAULT_X_RANGE, n=DEFAULT_SAMPLES):
    """The level line ``{h = b}`` of the harmonic measure of the upper wall's image."""
    b = float(b)
    if not (0.0 < b < 1.0):
        raise DomainError(f"b must lie in (0, 1), got {b!r}")
    return trace_strip_line(psi, harmonic_height(b), x_range, n, level="harmonic", b=b)


def traced_bound(curve):
    """``e^c`` for a curve from :func:`trace_hyperbolic_level`."""
    return level_line_bound(curve.meta["c"])


@dataclass(frozen=True)
class LevelDistanceReport:
    max_error: float
    worst_index: int
    tol: float

    @property
    def passed(self):
        return self.max_error <= self.tol


def verify_level_distance(psi, curve, c, tol=1e-6):
    """Check that every sample of ``curve`` sits at hyperbolic distance ``c`` from ``psi(R)``.

    The domain distance is pulled back to the strip, where it only depends on
    ``Im psi^{-1}(z)``.
    """
    z = np.asarray(psi.inverse(curve.points), dtype=complex)
    d = distance_for_offset(z.imag)
    err = np.abs(np.atleast_1d(d) - float(c))
    worst = int(np.argmax(err))
    return LevelDistanceReport(float(err[worst]), worst, float(tol))


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    worst: float
    witness: tuple = ()


@dataclass(frozen=True)
class MotionAxiomReport:
    identity: AxiomResult
    injective: AxiomResult
    holomorphic: AxiomResult
    endpoints: AxiomResult

    @property
    def passed(self):
        return all(r.passed for r in (self.identity, self.injective, self.holomorphic, self.endpoints))


def chordal(z, w):
    """Chordal distance on the Riemann sphere, with ``inf`` as the north pole."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    zi, wi = ~np.isfinite(z), ~np.isfinite(w)
    zf = np.where(zi, 0, z)
    wf = np.where(wi, 0, w)
    both = np.abs(zf - wf) / (np.sqrt(1 + np.abs(zf) ** 2) * np.sqrt(1 + np.abs(wf) ** 2))
    one_z = 1 / np.sqrt(1 + np.abs(wf) ** 2)
    one_w = 1 / np.sqrt(1 + np.abs(zf) ** 2)
    return np.where(zi & wi, 0.0, np.where(zi, one_z, np.where(wi, one_w, both)))


def verify_motion_axioms(
    motion,
    lambdas,
    points,
    identity_tol=1e-10,
    holomorphy_tol=1e-5,
    endpoint_tol=1e-3,
    step=1e-5,
):
    """Check the defining properties of a holomorphic motion on samples.

    ``points`` are samples ``a`` of ``gamma`` and ``lambdas`` parameter values in
    the strip.  Checks (i) ``Phi(0, a) = a``, (ii) injectivity of
    ``a -> Phi(lam, a)`` for each ``lam``, (iii) a finite-difference
    Cauchy-Riemann residual in ``lam`` and (iv) that the ends of ``gamma`` stay
    put, as a limit along ``x -> +-inf`` in the chordal metric (cutoff doubled
    from 12 until the tolerance is met or 96 is reached).  Never raises; each
    check reports its worst value and a witness.
    """
    lambdas = np.asarray(lambdas, dtype=complex).ravel()
    a = np.asarray(points, dtype=complex).ravel()

    at_zero = motion_point(motion, 0.0, a)
    id_err = np.abs(at_zero - a) / np.maximum(1.0, np.abs(a))
    k = int(np.argmax(id_err))
    identity = AxiomResult(bool(id_err[k] <= identity_tol), float(id_err[k]), (k,))

    distinct = np.abs(a[:, None] - a[None, :]) > 1e-12 * np.maximum(1.0, np.abs(a).max())
    worst_gap, gap_witness = np.inf, ()
    for lam in lambdas:
        img = motion_point(motion, lam, a)
        scale = max(1.0, float(np.abs(img).max()))
        gaps = np.where(distinct, np.abs(img[:, None] - img[None, :]), np.inf) / scale
        i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
        if gaps[i, j] < worst_gap:
            worst_gap, gap_witness = float(gaps[i, j]), (complex(lam), int(min(i, j)), int(max(i, j)))
    injective = AxiomResult(bool(worst_gap > 1e-12), worst_gap, gap_witness)

    worst_cr, cr_witness = 0.0, ()
    for lam in lambdas:
        fx = (motion_point(motion, lam + step, a) - motion_point(motion, lam - step, a)) / (2 * step)
        fy = (motion_point(motion, lam + 1j * step, a) - motion_point(motion, lam - 1j * step, a)) / (2 * step)
        res = np.abs(fy - 1j * fx) / np.maximum(np.abs(fx), 1e-300)
        i = int(np.argmax(res))
        if res[i] > worst_cr:
            worst_cr, cr_witness = float(res[i]), (complex(lam), i)
    holomorphic = AxiomResult(bool(worst_cr <= holomorphy_tol), worst_cr, cr_witness)

    psi = motion.psi
    worst_end, end_witness = 0.0, ()
    with np.errstate(over="ignore", invalid="ignore"):
        for sign in (1.0, -1.0):
            for lam in lambdas:
                for X in ENDPOINT_CUTOFFS:
                    d = float(chordal(psi(sign * X + lam), psi(sign * X)))
                    if d <= endpoint_tol:
                        break
                if d > worst_end:
                    worst_end, end_witness = d, (sign, complex(lam), X)
    endpoints = AxiomResult(bool(worst_end <= endpoint_tol), worst_end, end_witness)

    return MotionAxiomReport(identity, injective, holomorphic, endpoints)
