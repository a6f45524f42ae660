"""Streamlines of ideal flow through a channel, the conformal image of the strip.

The stream function is ``Im psi^{-1}``, so streamlines are images of
horizontal lines and the flow from the source at ``-inf`` to the sink at
``+inf`` is fixed by the channel map alone.  The strip height ``y0`` is the
primary coordinate; both harmonic normalisations are derived from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conformal import AnalyticMap
from .errors import ConfigurationError, DomainError
from .motion import DEFAULT_SAMPLES, DEFAULT_X_RANGE, Curve, trace_strip_line
from .strip import HALF_WIDTH, BoundReport, Theorem, distance_for_offset

ESCAPE_CUTOFFS = (6.0, 9.0, 12.0)


@dataclass(frozen=True)
class Channel:
    """A channel ``phi(S)`` with ``phi(x + iy) -> +-inf`` as ``x -> +-inf``.

    ``symmetric`` declares that the channel is symmetric across the real axis
    with ``phi(R) = R``; both properties are checked on samples.
    """

    phi: AnalyticMap
    symmetric: bool = False

    def __post_init__(self):
        heights = np.linspace(-1.2, 1.2, 5)
        with np.errstate(over="ignore"):
            for sign in (1.0, -1.0):
                mags = np.abs(self.phi(sign * np.asarray(ESCAPE_CUTOFFS)[:, None] + 1j * heights[None, :]))
                steps = np.diff(mags, axis=0)
                # growth must not stall: a bounded image has geometrically shrinking steps
                if not (np.all(steps > 0) and np.all(steps[1] >= 0.5 * steps[0])):
                    raise ConfigurationError(f"{self.phi.name} does not escape to infinity along the channel")
        if self.symmetric:
            xs = np.linspace(-6.0, 6.0, 121)
            dev = float(np.max(np.abs(self.phi(xs + 0j).imag)))
            if dev > 1e-9:
                raise ConfigurationError(f"{self.phi.name} is declared symmetric but Im phi(x) reaches {dev:.2e}")


def h_value(y0):
    """Flow normalisation with ``h = -1`` on the lower wall and ``+1`` on the upper."""
    return 2 * float(y0) / math.pi


def harmonic_b(y0):
    """The same level in the 0-to-1 harmonic-measure normalisation."""
    return (h_value(y0) + 1) / 2


def _check_height(y0):
    y0 = float(y0)
    if not abs(y0) < HALF_WIDTH:
        raise DomainError(f"streamline height must satisfy |y0| < pi/2, got {y0!r}")
    return y0


def channel_bound(channel, y0):
    """Distortion of the map carrying the central streamline onto the one at height ``y0``.

    ``K = exp(rho(R, R + i y0))`` by conformal invariance.  For a symmetric
    channel the central streamline is the real axis and the report is tagged
    ``quasiline``; otherwise it only bounds the map between the two streamlines.
    """
    y0 = _check_height(y0)
    K = math.exp(distance_for_offset(y0))
    tags = ("quasiline",) if channel.symmetric else ("relative",)
    inputs = {"y0": y0, "h_value": h_value(y0), "symmetric": channel.symmetric}
    return BoundReport(K, Theorem.CHANNEL, inputs, tags=tags)


@dataclass(frozen=True)
class Streamline:
    curve: Curve
    y0: float
    h_value: float
    bound: BoundReport

    def to_dict(self):
        return {
            "K": self.bound.K,
            "theorem": self.bound.theorem.value,
            "y0": self.y0,
            "h_value": self.h_value,
            "symmetric": bool(self.bound.inputs.get("symmetric", False)),
            "quasiline_tag": "quasiline" in self.bound.tags,
        }


def streamline(channel, y0, x_range=DEFAULT_X_RANGE, n=DEFAULT_SAMPLES):
    y0 = _check_height(y0)
    curve = trace_strip_line(channel.phi, y0, x_range, n, level="streamline")
    return Streamline(curve, y0, h_value(y0), channel_bound(channel, y0))


def streamlines(channel, heights, x_range=DEFAULT_X_RANGE, n=DEFAULT_SAMPLES):
    return [streamline(channel, y, x_range, n) for y in heights]
