"""Ideal flow around an obstacle in the strip, and conformal moduli of
the ring ``S \\ obstacle``.

The stream function is computed on a tensor lattice: walls at exactly
``Im z = +-pi/2``, far-field data ``psi = y`` at the truncation ends and
``psi = 0`` on the obstacle, which by symmetry is part of the central
streamline.  Boundaries crossing lattice edges are handled by cut edges (see
:mod:`quasilines.lattice`).  At the tips of vertical segments the stream
function behaves like ``Re sqrt(z - tip)``; that term is split off with a
local singular function so that probe values still converge at second order.
"""
from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.optimize import brentq
from skimage.measure import find_contours

from .errors import BracketError, ConfigurationError, ConvergenceError, DomainError, ExtractionError
from .lattice import Cut, LatticeProblem, uniform_nodes
from .motion import Curve
from .strip import HALF_WIDTH, WALL_GUARD, BoundReport, Theorem, distance_for_offset

FLUID, WALL, OBSTACLE = 0, 1, 2
DEFAULT_H = math.pi / 200
DEFAULT_TOL = 1e-9
#: cut distances below this fraction of ``h`` are snapped onto the node
SNAP_FRACTION = 1e-3
TIP_MIN_CELLS = 4  # cutoff radius, in cells, below which the tip correction is unreliable


# -- obstacle shapes -------------------------------------------------------


@dataclass(frozen=True)
class VerticalSegment:
    """The segment ``[x - i H, x + i H]``."""

    half_height: float
    x: float = 0.0

    @property
    def top(self):
        return float(self.half_height)


@dataclass(frozen=True)
class RealInterval:
    """The slit ``[a, b]`` on the real axis."""

    a: float
    b: float

    def __post_init__(self):
        if not self.b >= self.a:
            raise ConfigurationError(f"interval needs a <= b, got [{self.a}, {self.b}]")

    @property
    def top(self):
        return 0.0


@dataclass(frozen=True)
class MaskRegion:
    """An obstacle given by a predicate ``inside(X, Y)`` on lattice coordinates.

    It is rasterised to whole nodes, without sub-cell geometry.
    """

    inside: Callable
    name: str = "region"

    @property
    def top(self):
        return None


@dataclass(frozen=True)
class GridSpec:
    x_min: float = -6.0
    x_max: float = 6.0
    h: float = DEFAULT_H
    obstacles: tuple = ()

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ConfigurationError("lattice spacing must be positive")
        if not self.x_max > self.x_min:
            raise ConfigurationError("x_max must exceed x_min")
        if self.h > 0.25:
            raise ConfigurationError("lattice spacing too coarse to resolve the strip")
        object.__setattr__(self, "obstacles", tuple(self.obstacles))

    @property
    def x(self):
        return uniform_nodes(self.x_min, self.x_max, self.h)

    @property
    def y(self):
        return uniform_nodes(-HALF_WIDTH, HALF_WIDTH, self.h)

    @property
    def wall_snap_error(self):
        # the walls are lattice rows placed exactly at +-pi/2
        return 0.0

    def widened(self, factor=2.0):
        return replace(self, x_min=self.x_min * factor, x_max=self.x_max * factor)

    def refined(self, factor=2):
        return replace(self, h=self.h / factor)

    @property
    def obstacle_top(self):
        """Largest ``|Im z|`` reached by the obstacle (0 without one)."""
        tops = [ob.top for ob in self.obstacles]
        if any(t is None for t in tops):
            layout = build_layout(self)
            ys = np.broadcast_to(layout.y, layout.mask.shape)[layout.mask == OBSTACLE]
            return float(np.max(np.abs(ys)) + self.h) if ys.size else 0.0
        return max(tops, default=0.0)

    @property
    def mask(self):
        return build_layout(self).mask


@dataclass
class Layout:
    """Lattice nodes, node flags and cut edges for one :class:`GridSpec`."""

    x: np.ndarray
    y: np.ndarray
    mask: np.ndarray
    cuts: list
    tips: list
    labels: np.ndarray

    @property
    def X(self):
        return np.broadcast_to(self.x[:, None], self.mask.shape)

    @property
    def Y(self):
        return np.broadcast_to(self.y[None, :], self.mask.shape)


def _nearest(nodes, value):
    k = int(np.argmin(np.abs(nodes - value)))
    return k, float(abs(nodes[k] - value))


def _place_segment(seg, x, y, h, mask, cuts, tips):
    H = float(seg.half_height)
    if not (0 < H < HALF_WIDTH):
        raise ConfigurationError(f"segment half-height must lie in (0, pi/2), got {H}")
    i, _ = _nearest(x, seg.x)
    if not (0 < i < x.size - 1):
        raise ConfigurationError("segment outside the truncated channel")
    on = np.abs(y) <= H + 1e-12
    mask[i, on] = OBSTACLE
    j_top = int(np.max(np.nonzero(on)[0]))
    j_bot = int(np.min(np.nonzero(on)[0]))
    above, below = j_top + 1, j_bot - 1
    d = y[above] - H
    if d < SNAP_FRACTION * h:
        mask[i, above] = OBSTACLE
        mask[i, below] = OBSTACLE
        above, below, d = above + 1, below - 1, y[above + 1] - H
    if above >= y.size - 1 or below <= 0:
        raise ConfigurationError("segment closure must stay inside the strip")
    cuts.append(Cut(i, above, 1, -1, d, 0.0))
    cuts.append(Cut(i, below, 1, 1, d, 0.0))
    tips.append(complex(x[i], H))


def _place_interval(iv, x, y, h, mask, cuts):
    j0, err = _nearest(y, 0.0)
    if err > 0:
        raise ConfigurationError("lattice has no row on the real axis")
    a, b = float(iv.a), float(iv.b)
    if a <= x[0] or b >= x[-1]:
        raise ConfigurationError("interval closure must stay inside the truncated channel")
    inside = (x >= a - SNAP_FRACTION * h) & (x <= b + SNAP_FRACTION * h)
    if inside.any():
        mask[inside, j0] = OBSTACLE
        lo = int(np.min(np.nonzero(inside)[0])) - 1
        hi = int(np.max(np.nonzero(inside)[0])) + 1
    else:
        hi = int(np.searchsorted(x, b))
        lo = hi - 1
    cuts.append(Cut(lo, j0, 0, 1, a - x[lo], 0.0))
    cuts.append(Cut(hi, j0, 0, -1, x[hi] - b, 0.0))


def build_layout(spec):
    x, y, h = spec.x, spec.y, spec.h
    mask = np.full((x.size, y.size), FLUID, dtype=np.int8)
    mask[:, 0] = mask[:, -1] = WALL
    mask[0, :] = mask[-1, :] = WALL
    cuts, tips = [], []
    labels = np.zeros(mask.shape, dtype=np.int32)
    for k, ob in enumerate(spec.obstacles, start=1):
        before = mask == OBSTACLE
        if isinstance(ob, VerticalSegment):
            _place_segment(ob, x, y, h, mask, cuts, tips)
        elif isinstance(ob, RealInterval):
            _place_interval(ob, x, y, h, mask, cuts)
        elif isinstance(ob, MaskRegion):
            hit = np.asarray(ob.inside(x[:, None], y[None, :]), dtype=bool)
            hit = np.broadcast_to(hit, mask.shape)
            if np.any(hit & (mask == WALL)):
                raise ConfigurationError(f"{ob.name} must stay inside the strip")
            mask[hit] = OBSTACLE
        else:
            raise ConfigurationError(f"unknown obstacle type {type(ob).__name__}")
        new = (mask == OBSTACLE) & ~before
        labels[new] = k
        _check_connected(new, getattr(ob, "name", type(ob).__name__))
    for c in cuts:
        if mask[c.i, c.j] != FLUID:
            raise ConfigurationError("obstacles too close to each other or to the walls")
    return Layout(x, y, mask, cuts, tips, labels)


def _check_connected(nodes, name):
    from scipy.ndimage import label

    if not nodes.any():
        return
    _, count = label(nodes)
    if count != 1:
        raise ConfigurationError(f"obstacle {name} is not connected on the lattice ({count} pieces)")
    if nodes[:, [0, 1, -2, -1]].any() or nodes[[0, 1, -2, -1], :].any():
        raise ConfigurationError(f"obstacle {name} touches the walls or the truncation ends")


def _is_symmetric(layout):
    if not np.array_equal(layout.mask, layout.mask[:, ::-1]):
        return False
    ny = layout.y.size
    keys = {(c.i, c.j, c.axis, c.direction, round(c.distance, 12)) for c in layout.cuts}
    mirrored = {(i, ny - 1 - j, ax, -d if ax == 1 else d, dist) for i, j, ax, d, dist in keys}
    return keys == mirrored


# -- fields ----------------------------------------------------------------


@dataclass(eq=False)
class ScalarField:
    """Lattice values of a harmonic function together with the problem it solves."""

    values: np.ndarray
    spec: GridSpec
    layout: Layout
    kind: str
    residual: float
    tol: float
    method: str
    singular_coefficients: tuple = ()
    warnings: list = field(default_factory=list)

    @property
    def x(self):
        return self.layout.x

    @property
    def y(self):
        return self.layout.y

    @property
    def mask(self):
        return self.layout.mask

    def at(self, x, y):
        """Value at the lattice node nearest to ``(x, y)``."""
        i, _ = _nearest(self.x, x)
        j, _ = _nearest(self.y, y)
        return float(self.values[i, j])

    def interpolate(self, x, y):
        """Bilinear interpolation between lattice nodes."""
        f = RegularGridInterpolator((self.x, self.y), self.values)
        pts = np.stack(np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float)), axis=-1)
        return f(pts)


def _cutoff(r, R):
    """Smooth radial cutoff: 1 for ``r <= R/2``, 0 for ``r >= R``, with its first two r-derivatives.

    A C3 septic step; its gentle profile keeps the lattice truncation error of the
    localised singular term small even when the transition spans few cells.
    """
    t = np.clip((r - R / 2) / (R / 2), 0.0, 1.0)
    step = t**4 * (35 - 84 * t + 70 * t**2 - 20 * t**3)
    d1 = 140 * t**3 * (1 - t) ** 3
    d2 = 420 * t**2 * (1 - t) ** 2 * (1 - 2 * t)
    s = 2.0 / R
    return 1 - step, -d1 * s, -d2 * s * s


def _localised(Z, tip, R, dual=False):
    """``chi * Re f`` and its Laplacian, for ``f = sqrt(-i (z - tip))`` or ``1/f``."""
    w = Z - tip
    q = np.sqrt(-1j * w)
    with np.errstate(divide="ignore", invalid="ignore"):
        if dual:
            f = 1 / q
            fp = 0.5j * q**-3
        else:
            f = q
            fp = -0.5j / q
    r = np.abs(w)
    chi, chi_r, chi_rr = _cutoff(r, R)
    rr = np.where(r > 0, r, 1.0)
    support = chi_r != 0
    fp = np.where(support, fp, 0)
    lap_chi = chi_rr + chi_r / rr
    grad = chi_r * (w.real * fp.real - w.imag * fp.imag) / rr
    f_re = np.where((chi > 0) & (r > 0), f.real, 0.0)
    return chi * f_re, f_re * lap_chi + 2 * grad, np.where(r > 0, f.real, 0.0)


def _tip_radius(spec, layout, tip):
    """Cutoff radius: the singular correction must not reach walls, ends or other obstacles."""
    H = tip.imag
    gaps = [H, HALF_WIDTH - H, tip.real - spec.x_min, spec.x_max - tip.real]
    for other in layout.tips:
        if other != tip:
            gaps.append(abs(other - tip))
            gaps.append(abs(other.conjugate() - tip))
    obs = (layout.mask == OBSTACLE) & (np.abs(layout.X - tip.real) > 1e-12)
    if obs.any():
        gaps.append(float(np.min(np.abs(layout.X[obs] + 1j * layout.Y[obs] - tip))))
    return 0.9 * min(0.5, min(gaps))


def solve_stream_function(spec, tol=DEFAULT_TOL, method="auto", singular_correction=True):
    """Stream function of the flow from ``-inf`` to ``+inf`` around the obstacles.

    Returns a :class:`ScalarField` with ``psi = +-pi/2`` on the walls, ``0`` on
    the obstacles and ``y`` at the truncation ends.  Raises
    :class:`ConfigurationError` for obstacles that are not symmetric across
    the real axis (their streamline constant would be unknown) and
    :class:`ConvergenceError` if the residual exceeds ``tol``.
    """
    if not tol > 0:
        raise ConfigurationError("tol must be positive")
    layout = build_layout(spec)
    if not _is_symmetric(layout):
        raise ConfigurationError("unsupported configuration: obstacle is not symmetric across the real axis")
    values = np.zeros(layout.mask.shape)
    values[0, :] = values[-1, :] = layout.y
    values[:, 0] = -HALF_WIDTH
    values[:, -1] = HALF_WIDTH
    fixed = layout.mask != FLUID
    prob = LatticeProblem(layout.x, layout.y, spec.h, fixed, values, layout.cuts)
    u = prob.solve(method=method)
    coefficients = ()
    extra = None
    notes = []
    tips = []
    for tip in layout.tips if singular_correction else []:
        if _tip_radius(spec, layout, tip) < TIP_MIN_CELLS * spec.h:
            notes.append(f"tip at {tip} too close to a boundary for h={spec.h:.4g}; singular correction skipped")
        else:
            tips.append(tip)
    if tips:
        Z = layout.X + 1j * layout.Y
        h2 = spec.h**2
        singular, corrections, duals, kappas = [], [], [], []
        for tip in tips:
            R = _tip_radius(spec, layout, tip)
            S_up, L_up, _ = _localised(Z, tip, R)
            S_dn, L_dn, _ = _localised(np.conj(Z), tip, R)
            S = S_up - S_dn
            L = L_up - L_dn
            S[fixed] = 0.0
            b = h2 * L[~fixed]
            w = prob.expand(prob.solve_free(b, method=method))
            w[fixed] = 0.0
            V, LV, _ = _localised(Z, tip, R, dual=True)
            _, _, bare = _localised(Z, tip, R)
            singular.append((S, b))
            corrections.append(w + S)
            duals.append(LV)
            kappas.append(h2 * np.sum(bare * LV))
        m = len(tips)
        J = lambda k, v: h2 * np.sum(v * duals[k])
        M = np.array([[kappas[s] * (s == t) - J(s, corrections[t]) for t in range(m)] for s in range(m)])
        rhs = np.array([J(s, u) for s in range(m)])
        c = np.linalg.solve(M, rhs)
        coefficients = tuple(float(v) for v in c)
        for k in range(m):
            u = u + c[k] * corrections[k]
        u[fixed] = values[fixed]
        # residual of the smooth remainder against its own equation
        smooth = u - sum(c[k] * singular[k][0] for k in range(m))
        extra = sum(c[k] * singular[k][1] for k in range(m))
        residual = prob.residual(smooth, extra)
    else:
        residual = prob.residual(u)
    scale = max(1.0, float(np.max(np.abs(prob.rhs))) if prob.n else 1.0)
    if residual > tol * scale:
        raise ConvergenceError(f"stream function residual {residual:.3e} exceeds tolerance", residual=residual)
    solver = prob._solver[0] if prob._solver else method
    return ScalarField(u, spec, layout, "stream", residual, tol, solver, coefficients, notes)


# -- streamlines -----------------------------------------------------------


def extract_streamline(field, level):
    """The streamline ``{psi = level}`` as a single polyline from ``x_min`` to ``x_max``.

    Contours come from marching squares on the lattice values.  Params are
    cumulative arclength.  Raises :class:`ExtractionError` when the contour
    breaks into pieces, fails to span the channel or enters the obstacle.
    """
    level = float(level)
    if not abs(level) < HALF_WIDTH:
        raise DomainError(f"level must lie strictly between the wall values, got {level!r}")
    has_obstacle = bool(np.any(field.mask == OBSTACLE))
    if has_obstacle and level == 0.0:
        raise DomainError("the zero level splits around the obstacle; choose a nonzero level")
    pieces = find_contours(field.values, level)
    if not pieces:
        raise ExtractionError(f"no contour at level {level}")
    if len(pieces) > 1:
        sizes = ", ".join(str(len(p)) for p in pieces)
        raise ExtractionError(f"contour at level {level} fragments into {len(pieces)} pieces (sizes {sizes})")
    idx = pieces[0]
    grid_i = np.arange(field.x.size)
    grid_j = np.arange(field.y.size)
    xs = np.interp(idx[:, 0], grid_i, field.x)
    ys = np.interp(idx[:, 1], grid_j, field.y)
    _snap_to_cuts(field, level, idx, xs, ys)
    if xs[0] > xs[-1]:
        xs, ys, idx = xs[::-1], ys[::-1], idx[::-1]
    if abs(xs[0] - field.x[0]) > 1e-9 or abs(xs[-1] - field.x[-1]) > 1e-9:
        raise ExtractionError(f"contour at level {level} does not span the channel (x from {xs[0]:.4f} to {xs[-1]:.4f})")
    inside = _inside_obstacles(field.spec, xs, ys)
    if inside.any():
        k = int(np.argmax(inside))
        raise ExtractionError(f"contour at level {level} hits the obstacle near ({xs[k]:.4f}, {ys[k]:.4f})")
    pts = xs + 1j * ys
    keep = np.concatenate([[True], np.abs(np.diff(pts)) > 0])
    pts = pts[keep]
    s = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(pts)))])
    backtrack = float(max(0.0, -np.min(np.diff(pts.real)))) if pts.size > 1 else 0.0
    if backtrack > field.spec.h:
        raise ExtractionError(f"contour at level {level} folds back by {backtrack:.3e} in x")
    meta = {
        "level": level,
        "source": "stream-function",
        "h": field.spec.h,
        "obstacle_top": field.spec.obstacle_top if has_obstacle else 0.0,
        "x_window": (float(field.x[0]), float(field.x[-1])),
    }
    return Curve(pts, s, meta)


def _snap_to_cuts(field, level, idx, xs, ys):
    """Re-interpolate crossings on cut edges between the fluid node and the true boundary point."""
    cuts = {}
    for c in field.layout.cuts:
        lo = (c.i, c.j) if c.direction > 0 else ((c.i - 1, c.j) if c.axis == 0 else (c.i, c.j - 1))
        cuts.setdefault((c.axis,) + lo, []).append(c)
    if not cuts:
        return
    coords = (field.x, field.y)
    for k, (a, b) in enumerate(idx):
        for axis, frac in ((0, a), (1, b)):
            lo = int(np.floor(frac))
            if frac == lo:
                continue
            key = (axis, lo, int(round(b))) if axis == 0 else (axis, int(round(a)), lo)
            for c in cuts.get(key, ()):
                u = field.values[c.i, c.j]
                if u == c.value or not min(u, c.value) <= level <= max(u, c.value):
                    continue
                start = coords[axis][c.i if axis == 0 else c.j]
                pos = start + c.direction * c.distance * (u - level) / (u - c.value)
                if axis == 0:
                    xs[k] = pos
                else:
                    ys[k] = pos
                break


def _inside_obstacles(spec, xs, ys):
    hit = np.zeros(xs.shape, bool)
    for ob in spec.obstacles:
        if isinstance(ob, VerticalSegment):
            hit |= (np.abs(xs - ob.x) < 1e-12) & (np.abs(ys) <= ob.half_height)
        elif isinstance(ob, RealInterval):
            hit |= (np.abs(ys) < 1e-12) & (xs >= ob.a) & (xs <= ob.b)
        else:
            hit |= np.asarray(ob.inside(xs, ys), bool)
    return hit


def extract_streamlines(field, levels):
    return [extract_streamline(field, lv) for lv in levels]


# -- moduli ----------------------------------------------------------------


@dataclass(frozen=True)
class ModulusResult:
    """A conformal modulus with the evidence behind it."""

    value: float
    energy: float
    h: float
    residual: float
    widened_value: float = float("nan")
    warnings: tuple = ()

    def __float__(self):
        return float(self.value)


def _modulus_of(prob, method):
    u = prob.solve(method=method)
    E = prob.energy(u)
    return u, E


def ring_modulus(spec, tol=1e-4, method="auto", check_truncation=True):
    """Modulus of the truncated ring ``S \\ obstacle`` as ``1 / Dirichlet energy``.

    The potential is 0 on the obstacle and 1 on the walls and far ends; the
    normalisation gives ``log(R) / (2 pi)`` for the round annulus.  With
    ``check_truncation`` the computation is repeated with the x-window
    doubled; a change above ``tol`` is attached as a warning.
    """
    if not spec.obstacles:
        raise ConfigurationError("ring modulus needs a nonempty obstacle")
    layout = build_layout(spec)
    fixed = layout.mask != FLUID
    values = np.where(layout.mask == OBSTACLE, 0.0, 1.0)
    cuts = [replace(c, value=0.0) for c in layout.cuts]
    prob = LatticeProblem(layout.x, layout.y, spec.h, fixed, values, cuts)
    u, E = _modulus_of(prob, method)
    if not E > 0:
        raise DomainError("degenerate ring: zero Dirichlet energy")
    residual = prob.residual(u)
    notes = []
    widened = float("nan")
    if check_truncation:
        widened = ring_modulus(spec.widened(), tol, method, check_truncation=False).value
        if abs(widened - 1 / E) > tol:
            notes.append(
                f"truncation sensitivity: doubling the x-window changes the modulus by {abs(widened - 1 / E):.3e} > {tol:g}"
            )
            _warnings.warn(notes[-1], RuntimeWarning, stacklevel=2)
    return ModulusResult(1 / E, E, spec.h, residual, widened, tuple(notes))


def slit_spec(r, h=DEFAULT_H, margin=10.0):
    """Grid for ``S \\ [-r, r]`` truncated at ``|x| = r + margin``."""
    X = float(r) + margin
    return GridSpec(-X, X, h, (RealInterval(-float(r), float(r)),))


def slit_modulus(r, h=DEFAULT_H, margin=10.0, tol=1e-4, check_truncation=False):
    if not r > 0:
        raise DomainError("slit half-length must be positive")
    return ring_modulus(slit_spec(r, h, margin), tol, check_truncation=check_truncation)


def annulus_modulus(r_in, r_out, h, method="auto"):
    """Modulus of ``r_in < |z| < r_out`` on a square lattice with cut edges at both circles."""
    if not (0 < r_in < r_out):
        raise DomainError("need 0 < r_in < r_out")
    n = int(math.ceil(r_out / h)) + 1
    x = np.arange(-n, n + 1) * h
    X, Y = np.meshgrid(x, x, indexing="ij")
    rad = np.hypot(X, Y)
    inner = rad <= r_in
    outer = rad >= r_out
    fixed = inner | outer
    values = np.where(inner, 0.0, 1.0)
    cuts = []
    for axis in (0, 1):
        for direction in (1, -1):
            nb = np.roll(rad, -direction, axis=axis)
            ok = ~fixed
            for bound, hit, value in ((r_in, inner, 0.0), (r_out, outer, 1.0)):
                hit_nb = np.roll(hit, -direction, axis=axis)
                sel = ok & hit_nb
                for i, j in zip(*np.nonzero(sel)):
                    p = np.array([X[i, j], Y[i, j]])
                    e = np.zeros(2)
                    e[axis] = direction
                    # solve |p + t e| = bound for the crossing nearest to p
                    b = p @ e
                    disc = b * b - (p @ p - bound**2)
                    roots = [-b - math.sqrt(disc), -b + math.sqrt(disc)]
                    t = min(t for t in roots if 0 < t <= h + 1e-15)
                    cuts.append(Cut(int(i), int(j), axis, direction, t, value))
    prob = LatticeProblem(x, x, h, fixed, values, cuts)
    u, E = _modulus_of(prob, method)
    return ModulusResult(1 / E, E, h, prob.residual(u))


def find_matching_slit(target_mod, r_bracket=(0.01, 5.0), tol=1e-6, h=DEFAULT_H, margin=10.0):
    """Half-length ``r`` with ``Mod(S \\ [-r, r]) = target_mod`` on the same lattice.

    The modulus decreases strictly in ``r`` (the lattice version is continuous
    thanks to cut edges), so a bracketed root-find applies.  ``tol`` bounds the
    modulus mismatch; raises :class:`BracketError` when the bracket does not
    straddle the target.
    """
    lo, hi = map(float, r_bracket)
    if not (0 < lo < hi):
        raise BracketError("bracket must satisfy 0 < r_lo < r_hi")
    cache = {}

    def mod(r):
        if r not in cache:
            cache[r] = slit_modulus(r, h, margin).value
        return cache[r]

    f_lo, f_hi = mod(lo) - target_mod, mod(hi) - target_mod
    if f_lo * f_hi > 0:
        raise BracketError(
            f"target modulus {target_mod:.6g} outside [{mod(hi):.6g}, {mod(lo):.6g}] spanned by r in [{lo}, {hi}]"
        )
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    # a root-find in r with mismatch measured in modulus units
    r = brentq(lambda r: mod(r) - target_mod, lo, hi, xtol=1e-12, rtol=4 * np.finfo(float).eps, maxiter=200)
    if abs(mod(r) - target_mod) > tol:
        raise BracketError(f"root-find ended with modulus mismatch {abs(mod(r) - target_mod):.3e} > {tol:g}")
    return float(r)


# -- distortion bound ------------------------------------------------------


def obstacle_bound(curve, level=None, obstacle_top=None):
    """Upper estimate of ``exp(d_hyp(streamline, R + i pi/2))`` in the reflected domain.

    The domain obtained by reflecting the upper half of the obstructed channel
    across the upper wall contains the strip ``{t < Im z < pi - t}`` where
    ``t`` is the obstacle height.  Hyperbolic distances only grow when the
    domain shrinks, so the distance in that strip, which is closed form,
    bounds the true one from above; every sample of the streamline inside the
    strip gives such a bound and the smallest is reported.  Streamlines below
    the axis are handled by symmetry.
    """
    if level is None:
        level = curve.meta.get("level")
    if obstacle_top is None:
        obstacle_top = curve.meta.get("obstacle_top", 0.0)
    level = float(level)
    t = float(obstacle_top)
    if level == 0.0:
        raise DomainError("the zero streamline is not homotopic to a wall")
    ys = np.abs(curve.y)
    if level < 0 and np.any(curve.y > 0) or level > 0 and np.any(curve.y < 0):
        raise DomainError("streamline crosses the real axis; it is not separated from the obstacle")
    half = HALF_WIDTH - t
    if not half > 0:
        raise DomainError("obstacle reaches the walls")
    inside = ys > t
    inputs = {"level": level, "obstacle_top": t}
    tags = ("quasiline", "upper-estimate")
    notes = "hyperbolic metric increases under inclusion: inscribed sub-strip distance"
    if not inside.any():
        raise DomainError("streamline is not separated from the obstacle closure; no inscribed sub-strip")
    offsets = (HALF_WIDTH - ys[inside]) * (HALF_WIDTH / half)
    k = int(np.argmin(offsets))
    best = float(offsets[k])
    if best >= HALF_WIDTH - WALL_GUARD:
        inputs.update(min_offset=best, witness=int(np.nonzero(inside)[0][k]))
        return BoundReport(math.inf, Theorem.OBSTACLE, inputs, tags + ("unbounded",), notes)
    rho = distance_for_offset(best)
    inputs.update(min_offset=best, distance=rho, witness=int(np.nonzero(inside)[0][k]))
    return BoundReport(math.exp(rho), Theorem.OBSTACLE, inputs, tags, notes)
