"""Hyperbolic geometry of the strip ``S = {|Im z| < pi/2}`` and the closed-form
distortion bounds for its level lines.

The hyperbolic density on ``S`` is ``1/cos(y)``, so the distance from the real
axis to the horizontal line at height ``t`` is the inverse Gudermannian of
``t``.  Everything here is closed form; quadrature only appears in the tests.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

HALF_WIDTH = math.pi / 2
#: offsets this close to the wall are rejected instead of producing huge distances
WALL_GUARD = 1e-12


class Theorem(str, enum.Enum):
    """Which distortion estimate a :class:`BoundReport` comes from."""

    LEVEL_LINE = "LevelLine"
    HARMONIC_LEVEL = "HarmonicLevel"
    SYMMETRIC_LEVEL = "SymmetricLevel"
    CHANNEL = "Channel"
    OBSTACLE = "Obstacle"


@dataclass(frozen=True)
class LevelOffset:
    """A hyperbolic distance ``c`` paired with the strip height ``t`` it produces."""

    c: float
    t: float

    @classmethod
    def from_distance(cls, c):
        return cls(float(c), offset_for_distance(c))

    @classmethod
    def from_offset(cls, t):
        return cls(distance_for_offset(t) * (1 if t >= 0 else -1), t)


@dataclass(frozen=True)
class BoundReport:
    """A quasiconformal distortion bound ``K`` and where it came from.

    ``tags`` qualifies the claim: ``"quasiline"`` when the curve itself is
    certified a K-quasiline, ``"relative"`` when K only bounds the map from a
    reference curve, ``"upper-estimate"`` when K was obtained from a domain
    comparison rather than an exact distance.
    """

    K: float
    theorem: Theorem
    inputs: dict = field(default_factory=dict)
    tags: tuple = ()
    notes: str = ""

    def __post_init__(self):
        if not (self.K >= 1.0):
            raise DomainError(f"distortion bound must be >= 1, got {self.K!r}")

    @property
    def unbounded(self):
        return math.isinf(self.K)

    def to_dict(self):
        return {
            "K": self.K,
            "theorem": self.theorem.value,
            "inputs": dict(self.inputs),
            "tags": list(self.tags),
            "notes": self.notes,
        }


def _as_real(value, name):
    arr = np.asarray(value)
    if np.iscomplexobj(arr):
        raise DomainError(f"{name} must be real")
    return arr


def offset_for_distance(c):
    """Height ``t`` of the line in ``S`` at hyperbolic distance ``c`` from the real axis.

    This is the Gudermannian ``gd(c) = 2 arctan(tanh(c/2))``.  The result is
    returned as ``np.longdouble``: near the wall the gap ``pi/2 - t`` is about
    ``2 exp(-c)``, which a double cannot resolve well enough to invert for
    ``c`` beyond ~15.  Arrays are accepted and mapped elementwise.
    """
    c = _as_real(c, "c")
    if not np.all(np.isfinite(c)):
        raise DomainError("hyperbolic distance must be finite")
    if np.any(c < 0):
        raise DomainError("hyperbolic distance must be nonnegative")
    c = c.astype(np.longdouble)
    t = 2 * np.arctan(np.tanh(c / 2))
    return t[()] if t.ndim == 0 else t


def distance_for_offset(t):
    """Hyperbolic distance in ``S`` between the real axis and the line ``R + i t``.

    Closed form ``log((1 + tan(|t|/2)) / (1 - tan(|t|/2)))``, evaluated as
    ``2 artanh(tan(|t|/2))`` in extended precision.  Returns a float (or a
    float64 array).
    """
    t = _as_real(t, "t")
    if not np.all(np.isfinite(t)):
        raise DomainError("offset must be finite")
    a = np.abs(t.astype(np.longdouble))
    if np.any(a >= np.longdouble(HALF_WIDTH) - np.longdouble(WALL_GUARD)):
        raise DomainError(f"offset must satisfy |t| < pi/2 (got max |t| = {float(np.max(a))!r})")
    rho = (2 * np.arctanh(np.tan(a / 2))).astype(np.float64)
    return float(rho) if rho.ndim == 0 else rho


def in_strip(z, margin=0.0):
    return np.abs(np.imag(z)) < HALF_WIDTH - margin


def strip_distance(z1, z2):
    """Point-to-point hyperbolic distance in ``S`` (curvature -1).

    Both points are sent to the disk by ``w = tanh(z/2)`` and measured there.
    """
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    if not (np.all(in_strip(z1)) and np.all(in_strip(z2))):
        raise DomainError("points must lie strictly inside the strip |Im z| < pi/2")
    w1 = np.tanh(z1 / 2)
    w2 = np.tanh(z2 / 2)
    tau = np.abs((w1 - w2) / (1 - np.conj(w1) * w2))
    rho = 2 * np.arctanh(np.minimum(tau, 1.0))
    return float(rho) if rho.ndim == 0 else rho


def level_line_bound(c):
    """``K <= e^c`` for the map taking a geodesic to its ``c``-level line."""
    c = float(c)
    if not math.isfinite(c) or c < 0:
        raise DomainError(f"hyperbolic distance must be finite and >= 0, got {c!r}")
    return BoundReport(math.exp(c), Theorem.LEVEL_LINE, {"c": c})


def _check_unit_open(name, value):
    if not (0.0 < value < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {value!r}")


def harmonic_level_bound(a, b):
    """Bound for moving the harmonic-measure level line ``{h=a}`` onto ``{h=b}``.

    ``K = tan(b pi/2) / tan(a pi/2)`` for ``0 < a <= b < 1``.  For levels below
    1/2 in the other orientation, pass ``(1 - b, 1 - a)``.
    """
    a = float(a)
    b = float(b)
    _check_unit_open("a", a)
    _check_unit_open("b", b)
    if a > b:
        raise DomainError(f"expected a <= b, got a={a!r}, b={b!r}")
    if a == b:
        K = 1.0
    else:
        K = math.tan(b * math.pi / 2) / math.tan(a * math.pi / 2)
    return BoundReport(K, Theorem.HARMONIC_LEVEL, {"a": a, "b": b})


def symmetric_level_bound(b):
    """``K <= tan(b pi/2)`` for level lines of a domain symmetric across the real axis."""
    b = float(b)
    if not (0.5 <= b < 1.0):
        raise DomainError(f"b must lie in [1/2, 1), got {b!r}")
    K = 1.0 if b == 0.5 else math.tan(b * math.pi / 2)
    return BoundReport(K, Theorem.SYMMETRIC_LEVEL, {"b": b}, tags=("quasiline",))


def harmonic_height(b):
    """Strip height of the level line ``{h = b}`` when ``h`` runs 0 to 1 across ``S``."""
    return math.pi * (2 * float(b) - 1) / 2
