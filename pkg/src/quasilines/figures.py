"""Data behind the three standard pictures: hyperbolic level lines in the
strip, harmonic level lines of the two-slit plane, and flow lines around a
vertical segment."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .certify import asymptotic_angle
from .conformal import identity, two_slit_map
from .motion import DEFAULT_SAMPLES, trace_harmonic_level, trace_hyperbolic_level
from .obstacle import DEFAULT_H, GridSpec, VerticalSegment, extract_streamline, obstacle_bound, solve_stream_function
from .strip import HALF_WIDTH, harmonic_height, level_line_bound, symmetric_level_bound


@dataclass
class FigureData:
    name: str
    curves: list
    annotations: list
    view: tuple
    walls: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def report(self, inputs):
        return {
            "command": self.name,
            "inputs": inputs,
            "curves": self.annotations,
            "warnings": list(self.warnings),
            **self.extra,
        }


def _strip_walls(x0, x1):
    return [np.array([x0, x1]) + 1j * HALF_WIDTH, np.array([x0, x1]) - 1j * HALF_WIDTH]


def fig1(n_max=4, x_range=(-6.0, 6.0), n=DEFAULT_SAMPLES):
    """Level lines at integer hyperbolic distance from the real axis of the strip."""
    psi = identity()
    curves, notes = [], []
    for c in range(0, n_max + 1):
        for side in ((1,) if c == 0 else (1, -1)):
            curve = trace_hyperbolic_level(psi, c, side, x_range, n)
            bound = level_line_bound(c)
            curves.append(curve)
            notes.append({"c": c, "side": side, "height": curve.meta["height"], "K": bound.K, "theorem": bound.theorem})
    return FigureData("fig1", curves, notes, (x_range[0], x_range[1], -2.0, 2.0), _strip_walls(*x_range))


def hyperbola_residual(curve, y0):
    """Residual of ``(2v/sin y0)^2 - (2u/cos y0)^2 = 1`` relative to the size of the terms.

    For ``y0 = 0`` the image is the real axis and ``max |v|`` is returned.
    """
    u, v = curve.x, curve.y
    if y0 == 0:
        return float(np.max(np.abs(v)))
    a = (2 * v / math.sin(y0)) ** 2
    b = (2 * u / math.cos(y0)) ** 2
    return float(np.max(np.abs(a - b - 1) / np.maximum(1.0, a)))


def fig2(x_range=(-6.0, 6.0), n=DEFAULT_SAMPLES, levels=20):
    """Level lines ``{h = k/levels}`` of harmonic measure in the plane slit along ``|Im w| >= 1/2``.

    Levels above 1/2 carry ``tan(k pi / (2 levels))``; those below carry the
    reflected bound ``cot``, with ``coth`` of the same argument reported next
    to it as an alternative reading.
    """
    psi = two_slit_map()
    curves, notes = [], []
    for k in range(1, levels):
        b = k / levels
        curve = trace_harmonic_level(psi, b, x_range, n)
        y0 = harmonic_height(b)
        arg = k * math.pi / (2 * levels)
        entry = {"k": k, "b": b, "height": y0, "hyperbola_residual": hyperbola_residual(curve, y0)}
        if k * 2 >= levels:
            bound = symmetric_level_bound(b)
            entry.update(K=bound.K, theorem=bound.theorem, formula="tan", tan=math.tan(arg))
            delta = 1 - b
            entry["asymptotic_angle"] = asymptotic_angle(curve)
            entry["angle_pi_delta"] = math.pi * delta
            entry["angle_pi_delta_half"] = math.pi * delta / 2
        else:
            bound = symmetric_level_bound(1 - b)
            entry.update(K=bound.K, theorem=bound.theorem, formula="cot", cot=1 / math.tan(arg), coth=1 / math.tanh(arg))
        if k * 2 == levels:
            entry.update(cot=1 / math.tan(arg), coth=1 / math.tanh(arg))
        curves.append(curve)
        notes.append(entry)
    slits = [np.array([0.5j, 40j]), np.array([-0.5j, -40j])]
    return FigureData("fig2", curves, notes, (-6.0, 6.0, -4.0, 4.0), slits)


def fig3(h=DEFAULT_H, half_height=1.0, levels=20, x_range=(-6.0, 6.0)):
    """Flow lines ``psi = +-k pi / levels`` around the segment ``[-i H, i H]``."""
    spec = GridSpec(x_range[0], x_range[1], h, (VerticalSegment(half_height),))
    field_ = solve_stream_function(spec)
    curves, notes = [], []
    for k in range(1, levels // 2):
        for sign in (1, -1):
            level = sign * k * math.pi / levels
            curve = extract_streamline(field_, level)
            bound = obstacle_bound(curve, level)
            curves.append(curve)
            notes.append({"k": sign * k, "level": level, "K": bound.K, "theorem": bound.theorem, "tags": list(bound.tags)})
    walls = _strip_walls(*x_range) + [np.array([-1j * half_height, 1j * half_height])]
    extra = {
        "grid": {"h": h, "x_min": x_range[0], "x_max": x_range[1], "nx": field_.x.size, "ny": field_.y.size},
        "residual": field_.residual,
        "tip_coefficients": list(field_.singular_coefficients),
    }
    data = FigureData("fig3", curves, notes, (x_range[0], x_range[1], -2.0, 2.0), walls, extra=extra)
    data.field = field_
    return data
