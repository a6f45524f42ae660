"""Serialisation of curves, reports and fields.

CSV and JSON output is deterministic: floats are written with 17
significant digits (CSV) or the shortest round-trip repr (JSON), and keys
are sorted, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import DomainError
from .motion import Curve

CSV_HEADER = ("x", "y", "param")
SVG_VERSION = "quasilines-svg 1"


def _fmt(v):
    return format(float(v), ".17g")


def curve_to_csv(curve, path):
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(",".join(CSV_HEADER) + "\n")
        for z, t in zip(curve.points, curve.params):
            fh.write(f"{_fmt(z.real)},{_fmt(z.imag)},{_fmt(t)}\n")
    return path


def curve_from_csv(path):
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(c.strip() for c in rows[0]) != CSV_HEADER:
        raise DomainError(f"{path}: expected header {','.join(CSV_HEADER)}")
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 3:
        raise DomainError(f"{path}: expected three columns per row")
    return Curve(data[:, 0] + 1j * data[:, 1], data[:, 2], {"source": str(path)})


def field_to_csv(field, path):
    """Dump a lattice field as a matrix: first row holds y, first column x."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write("x\\y," + ",".join(_fmt(v) for v in field.y) + "\n")
        for xv, row in zip(field.x, field.values):
            fh.write(_fmt(xv) + "," + ",".join(_fmt(v) for v in row) + "\n")
    return path


def jsonable(obj):
    """Recursively convert numpy values, complex numbers and non-finite floats for JSON."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(obj.real), jsonable(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def dumps(report):
    return json.dumps(jsonable(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(report, path):
    path = Path(path)
    path.write_text(dumps(report))
    return path


def svg_document(curves, view, walls=(), labels=(), width=800):
    """Polylines in a fixed ``view = (x_min, x_max, y_min, y_max)`` window.

    ``walls`` are extra polylines drawn in grey, ``labels`` pairs of
    ``(complex position, text)``.  The y axis points up.
    """
    x0, x1, y0, y1 = map(float, view)
    height = int(round(width * (y1 - y0) / (x1 - x0)))

    def pt(z):
        u = (z.real - x0) / (x1 - x0) * width
        v = (y1 - z.imag) / (y1 - y0) * height
        return f"{u:.3f},{v:.3f}"

    def polyline(points, style):
        pts = np.asarray(points, dtype=complex)
        keep = (pts.real >= x0 - 1) & (pts.real <= x1 + 1) & (pts.imag >= y0 - 1) & (pts.imag <= y1 + 1)
        pts = pts[keep]
        if pts.size < 2:
            return ""
        return f'<polyline fill="none" {style} points="{" ".join(pt(z) for z in pts)}"/>'

    out = [
        f"<!-- {SVG_VERSION} -->",
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for w in walls:
        out.append(polyline(w, 'stroke="#888" stroke-width="3"'))
    for c in curves:
        pts = c.points if isinstance(c, Curve) else c
        out.append(polyline(pts, 'stroke="black" stroke-width="1"'))
    for z, text in labels:
        u, v = pt(complex(z)).split(",")
        out.append(f'<text x="{u}" y="{v}" font-size="10" font-family="sans-serif">{text}</text>')
    out.append("</svg>")
    return "\n".join(line for line in out if line) + "\n"


def write_svg(path, *args, **kwargs):
    path = Path(path)
    path.write_text(svg_document(*args, **kwargs))
    return path
