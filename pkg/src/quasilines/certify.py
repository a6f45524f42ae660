"""Empirical bounded-turning constants of sampled curves.

A curve has bounded turning with constant ``C`` when every subarc has
diameter at most ``C`` times the distance between its end points.  Over a
finite sample the maximum is exact and can be found in ``O(n^2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .motion import Curve

MAX_SAMPLES = 2000
COINCIDENT = 1e-14


@dataclass(frozen=True)
class TurningReport:
    C: float
    witness: tuple
    n_pairs: int
    n_points: int
    skipped: int = 0
    subsampled_from: int | None = None
    window: tuple | None = None
    K_bound: object = None
    comparison: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "C": self.C,
            "witness": list(self.witness),
            "n_pairs": self.n_pairs,
            "n_points": self.n_points,
            "skipped": self.skipped,
        }
        if self.subsampled_from is not None:
            out["subsampled_from"] = self.subsampled_from
        if self.window is not None:
            out["window"] = list(self.window)
        if self.K_bound is not None:
            out["K"] = self.K_bound.K
            out["theorem"] = self.K_bound.theorem.value
            out["comparison"] = dict(self.comparison)
        return out


def _points(curve):
    if isinstance(curve, Curve):
        return curve.points
    return np.asarray(curve, dtype=complex).ravel()


def subsample(points, n_max=MAX_SAMPLES):
    """Uniform index subsample keeping both end points."""
    if points.size <= n_max:
        return points, None
    idx = np.unique(np.round(np.linspace(0, points.size - 1, n_max)).astype(int))
    return points[idx], points.size


def turning_ratios(points):
    """Matrix of ``diam(points[i..j]) / |points[i] - points[j]|`` for ``i < j`` (NaN elsewhere)."""
    p = np.asarray(points, dtype=complex)
    n = p.size
    D = np.abs(p[:, None] - p[None, :])
    # M[l, i] = max_{i <= k <= l} D[l, k]: farthest point of p[i..l] from p[l]
    M = np.where(np.tril(np.ones((n, n), bool)), D, 0.0)
    M = np.flip(np.maximum.accumulate(np.flip(M, axis=1), axis=1), axis=1)
    # diam(i, j) = max_{l <= j} M[l, i]
    diam = np.maximum.accumulate(M, axis=0).T
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = diam / D
    ratio[~np.triu(np.ones((n, n), bool), 1)] = np.nan
    return ratio, D


def bounded_turning(curve, n_max=MAX_SAMPLES):
    """Sampled bounded-turning constant with the index pair achieving it.

    Pairs of coincident points are skipped and counted.  Curves above
    ``n_max`` samples are uniformly subsampled first (recorded in the report).
    """
    pts, original = subsample(_points(curve), n_max)
    if pts.size < 3:
        raise DomainError("bounded turning needs at least 3 points")
    if not np.all(np.isfinite(pts)):
        raise DomainError("curve points must be finite")
    ratio, D = turning_ratios(pts)
    upper = np.triu(np.ones(D.shape, bool), 1)
    coincident = upper & (D < COINCIDENT)
    ratio[coincident] = np.nan
    if np.all(np.isnan(ratio)):
        raise DomainError("all point pairs coincide")
    k = int(np.nanargmax(ratio))
    i, j = np.unravel_index(k, ratio.shape)
    C = max(1.0, float(ratio[i, j]))
    window = None
    if isinstance(curve, Curve) and "x_window" in curve.meta:
        window = tuple(curve.meta["x_window"])
    elif isinstance(curve, Curve):
        window = (float(curve.params[0]), float(curve.params[-1]))
    n = pts.size
    return TurningReport(
        C,
        (int(i), int(j)),
        int(n * (n - 1) // 2 - coincident.sum()),
        int(n),
        int(coincident.sum()),
        original,
        window,
    )


def certify_against_bound(curve, bound, n_max=MAX_SAMPLES):
    """Bounded-turning report with a distortion bound attached for comparison.

    There is no verdict: a sampled ``C`` may exceed or fall below ``K`` for a
    genuine ``K``-quasiline, so the comparison is evidence only.
    """
    rep = bounded_turning(curve, n_max)
    comparison = {"C": rep.C, "K": bound.K, "C_over_K": rep.C / bound.K if math.isfinite(bound.K) else 0.0}
    return TurningReport(**{**rep.__dict__, "K_bound": bound, "comparison": comparison})


def asymptotic_angle(curve, tail=0.1):
    """Angle (radians) between the imaginary axis and the chord through the last ``tail`` of the curve.

    Used for level lines that escape to infinity along a ray.
    """
    p = _points(curve)
    m = max(2, int(round(tail * p.size)))
    seg = p[-1] - p[-m]
    return float(abs(math.atan2(abs(seg.real), abs(seg.imag))))
