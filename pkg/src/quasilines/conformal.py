"""Analytic maps between the strip, the disk, the upper half-plane and a few
channel domains, with derivatives, inverses and Schwarz reflection.

Maps act elementwise on numpy arrays of complex numbers.  Only closed-form
maps are provided; a user channel is supplied as callables.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError, ConvergenceError, DomainError, SingularError
from .strip import HALF_WIDTH

BOUNDARY_MARGIN = 1e-9
NEWTON_MAX_ITER = 100
NEWTON_TOL = 1e-10
SINGULAR_DERIVATIVE = 1e-14


class DomainKind(str, enum.Enum):
    STRIP = "Strip"
    DISK = "Disk"
    HALF_PLANE = "HalfPlane"
    TWO_SLIT_PLANE = "TwoSlitPlane"
    USER_CHANNEL = "UserChannel"


@dataclass(frozen=True)
class Domain:
    """A domain descriptor with a membership test.

    ``STRIP`` takes ``params = (y_lo, y_hi)``; ``TWO_SLIT_PLANE`` takes the slit
    height; ``USER_CHANNEL`` carries an arbitrary ``predicate(z, margin)``.
    """

    kind: DomainKind
    params: tuple = ()
    margin: float = BOUNDARY_MARGIN
    predicate: Optional[Callable] = field(default=None, compare=False)

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        m = self.margin
        finite = np.isfinite(z)
        if self.kind is DomainKind.STRIP:
            lo, hi = self.params
            inside = (z.imag > lo + m) & (z.imag < hi - m)
        elif self.kind is DomainKind.DISK:
            inside = np.abs(z) < 1 - m
        elif self.kind is DomainKind.HALF_PLANE:
            inside = z.imag > m
        elif self.kind is DomainKind.TWO_SLIT_PLANE:
            (k,) = self.params
            on_slit = (np.abs(z.real) <= m) & (np.abs(z.imag) >= k - m)
            inside = ~on_slit
        elif self.predicate is not None:
            inside = np.asarray(self.predicate(z, m), dtype=bool)
        else:
            inside = np.ones(z.shape, dtype=bool)
        return inside & finite

    def compatible_with(self, other):
        if DomainKind.USER_CHANNEL in (self.kind, other.kind):
            return True
        return self.kind is other.kind and np.allclose(self.params, other.params)


def strip_domain(lo=-HALF_WIDTH, hi=HALF_WIDTH):
    return Domain(DomainKind.STRIP, (float(lo), float(hi)))


STRIP = strip_domain()
DISK = Domain(DomainKind.DISK)
UPPER_HALF_PLANE = Domain(DomainKind.HALF_PLANE)
TWO_SLIT_PLANE = Domain(DomainKind.TWO_SLIT_PLANE, (0.5,))


def _reshape_out(value, like):
    value = np.asarray(value)
    return value[()] if np.ndim(like) == 0 else value


@dataclass(frozen=True)
class AnalyticMap:
    """An evaluatable conformal map ``source -> target``.

    ``inv`` is the closed-form inverse when there is one; otherwise
    :meth:`inverse` runs damped Newton from ``seed(w)`` (or from ``w`` itself).
    """

    func: Callable
    deriv: Callable
    source: Domain
    target: Domain
    inv: Optional[Callable] = None
    seed: Optional[Callable] = None
    name: str = "map"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return _reshape_out(self.func(z), z)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        return _reshape_out(self.deriv(z), z)

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        if not np.all(self.target.contains(w)):
            bad = np.asarray(w)[~self.target.contains(w)].ravel()[0]
            raise DomainError(f"{self.name}: {bad!r} is not in the target domain")
        if self.inv is not None:
            z = np.asarray(self.inv(w), dtype=complex)
            ok = self.source.contains(z)
            if not np.all(ok):
                bad = np.asarray(w)[~ok].ravel()[0]
                raise DomainError(f"{self.name}: inverse of {bad!r} leaves the source domain")
            return _reshape_out(z, w)
        seed = self.seed(w) if self.seed is not None else w
        return newton_invert(self, w, seed)

    def inverted(self):
        """The inverse map as an :class:`AnalyticMap` (needs a closed-form inverse)."""
        if self.inv is None:
            raise ConfigurationError(f"{self.name} has no closed-form inverse")
        fwd = self
        return AnalyticMap(
            func=fwd.inv,
            deriv=lambda w: 1.0 / fwd.deriv(fwd.inv(w)),
            source=fwd.target,
            target=fwd.source,
            inv=fwd.func,
            name=f"{fwd.name}^-1",
        )


def identity(domain=STRIP):
    return AnalyticMap(
        func=lambda z: z,
        deriv=lambda z: np.ones_like(z),
        source=domain,
        target=domain,
        inv=lambda w: w,
        name="identity",
    )


def strip_to_disk():
    """``z -> tanh(z/2)``: the strip onto the unit disk, real axis onto ``(-1, 1)``."""
    return AnalyticMap(
        func=lambda z: np.tanh(z / 2),
        deriv=lambda z: 0.5 / np.cosh(z / 2) ** 2,
        source=STRIP,
        target=DISK,
        inv=lambda w: 2 * np.arctanh(w),
        name="strip_to_disk",
    )


def strip_to_half_plane():
    """``z -> i e^z``: the strip onto the upper half-plane."""
    return AnalyticMap(
        func=lambda z: 1j * np.exp(z),
        deriv=lambda z: 1j * np.exp(z),
        source=STRIP,
        target=UPPER_HALF_PLANE,
        inv=lambda w: np.log(-1j * w),
        name="strip_to_half_plane",
    )


def two_slit_map():
    """``z -> sinh(z)/2`` from the strip onto the plane minus ``[i/2, i inf)`` and ``[-i/2, -i inf)``.

    The real axis goes to itself and the walls ``Im z = +-pi/2`` go to the
    upper and lower slits.  The inverse is the principal ``arcsinh(2w)``, whose
    branch cuts are exactly the slits.
    """
    return AnalyticMap(
        func=lambda z: np.sinh(z) / 2,
        deriv=lambda z: np.cosh(z) / 2,
        source=STRIP,
        target=TWO_SLIT_PLANE,
        inv=lambda w: np.arcsinh(2 * w),
        name="two_slit_map",
    )


def _upper_branch(root, sign_ref):
    # pick the square root in the closed upper half-plane; on the real axis follow sign_ref
    root = np.where(root.imag < 0, -root, root)
    on_axis = root.imag == 0
    return np.where(on_axis, np.copysign(1.0, sign_ref.real) * np.abs(root.real), root)


def vertical_slit_map(half_height=1.0):
    """Conformal map of ``S \\ [-r, r]`` onto ``S \\ [-iH, iH]`` fixing both walls and the ends.

    ``H = half_height`` and ``r = artanh(sin H)``.  In the upper half
    ``tanh(G(z)) = sqrt(tanh(z)^2 - sin(H)^2) / cos(H)``; the lower half follows
    from ``G(conj z) = conj G(z)``.  Horizontal lines ``Im z = y0`` are carried
    to the streamlines of ideal flow around the segment.
    """
    H = float(half_height)
    if not (0.0 < H < HALF_WIDTH):
        raise DomainError(f"half height must lie in (0, pi/2), got {H!r}")
    sh, ch = math.sin(H), math.cos(H)
    r = math.atanh(sh)

    def upper(z):
        t = np.tanh(z)
        m = _upper_branch(np.sqrt(t * t - sh * sh + 0j) / ch, t)
        return np.arctanh(m)

    def upper_deriv(z):
        t = np.tanh(z)
        m = _upper_branch(np.sqrt(t * t - sh * sh + 0j) / ch, t)
        # d/dz artanh(m) with m^2 cos^2 H = tanh^2 z - sin^2 H
        dm = t * (1 - t * t) / (ch * ch * m)
        return dm / (1 - m * m)

    def upper_inv(p):
        m = np.tanh(p)
        t = _upper_branch(np.sqrt(ch * ch * m * m + sh * sh + 0j), m)
        return np.arctanh(t)

    def reflect(f):
        def g(z):
            lower = z.imag < 0
            zz = np.where(lower, np.conj(z), z)
            out = f(zz)
            return np.where(lower, np.conj(out), out)

        return g

    def off_real_slit(z, m):
        return (np.abs(z.imag) < HALF_WIDTH - m) & ~((np.abs(z.imag) <= m) & (np.abs(z.real) <= r + m))

    def off_vertical_slit(z, m):
        return (np.abs(z.imag) < HALF_WIDTH - m) & ~((np.abs(z.real) <= m) & (np.abs(z.imag) <= H + m))

    return AnalyticMap(
        func=reflect(upper),
        deriv=reflect(upper_deriv),
        source=Domain(DomainKind.USER_CHANNEL, ("real_slit", r), predicate=off_real_slit),
        target=Domain(DomainKind.USER_CHANNEL, ("vertical_slit", H), predicate=off_vertical_slit),
        inv=reflect(upper_inv),
        name=f"vertical_slit_map(H={H:g})",
    )


def matching_slit_radius(half_height):
    """Half length ``r`` of the real slit whose complement in ``S`` is conformally
    equivalent to ``S`` minus the vertical segment ``[-iH, iH]``."""
    return math.atanh(math.sin(float(half_height)))


def user_channel(func, deriv, inverse=None, seed=None, contains=None, name="user_channel"):
    """Wrap user-supplied callables as an :class:`AnalyticMap` from the strip.

    ``contains(z, margin)`` describes the image domain; without it every finite
    point is accepted.
    """
    target = Domain(DomainKind.USER_CHANNEL, (name,), predicate=contains)
    return AnalyticMap(func, deriv, STRIP, target, inv=inverse, seed=seed, name=name)


def compose(outer, inner):
    """``outer o inner`` with chain-rule derivative and reversed inverse."""
    if not inner.target.compatible_with(outer.source):
        raise ConfigurationError(
            f"cannot compose {outer.name} after {inner.name}: "
            f"{inner.target.kind.value} does not feed {outer.source.kind.value}"
        )

    def inv(w):
        return inner.inverse(outer.inverse(w))

    return AnalyticMap(
        func=lambda z: outer.func(inner.func(z)),
        deriv=lambda z: outer.deriv(inner.func(z)) * inner.deriv(z),
        source=inner.source,
        target=outer.target,
        inv=inv,
        name=f"{outer.name}o{inner.name}",
    )


def newton_invert(amap, w, seed, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER):
    """Solve ``amap(z) = w`` by damped Newton, elementwise over arrays.

    A step is halved until it stays in the source domain and lowers the
    residual, so iterates never leave the source.  Convergence means
    ``|amap(z) - w| <= tol * max(1, |w|)``.
    """
    w = np.asarray(w, dtype=complex)
    z = np.array(np.broadcast_to(np.asarray(seed, dtype=complex), w.shape), dtype=complex)
    if not np.all(amap.source.contains(z)):
        raise DomainError(f"{amap.name}: Newton seed outside the source domain")
    scale = np.maximum(1.0, np.abs(w))
    res = amap.func(z) - w
    for _ in range(max_iter):
        err = np.abs(res)
        active = err > tol * scale
        if not np.any(active):
            return _reshape_out(z, w)
        d = amap.deriv(z)
        if np.any(np.abs(d[active]) < SINGULAR_DERIVATIVE):
            raise SingularError(f"{amap.name}: derivative vanished during Newton inversion")
        step = np.where(active, res / np.where(active, d, 1), 0)
        s = np.ones(w.shape)
        pending = active.copy()
        for _ in range(60):
            trial = z - s * step
            ok = amap.source.contains(trial)
            new_res = np.where(ok, amap.func(np.where(ok, trial, z)) - w, np.inf)
            accept = pending & ok & (np.abs(new_res) < err)
            z = np.where(accept, trial, z)
            res = np.where(accept, new_res, res)
            pending &= ~accept
            if not np.any(pending):
                break
            s = np.where(pending, s / 2, s)
        if np.any(pending):
            # no descent step exists from here; stop rather than loop
            break
    err = np.abs(res)
    if np.any(err > tol * scale):
        raise ConvergenceError(
            f"{amap.name}: Newton inversion did not converge (residual {float(np.max(err)):.3e})",
            residual=float(np.max(err)),
        )
    return _reshape_out(z, w)


def _reflection(k):
    return lambda z: np.conj(z) + 2j * k


def reflect_across_line(amap, k, samples=None, tol=1e-8):
    """Schwarz reflection of ``amap`` across the horizontal line ``Im z = k``.

    ``amap`` must carry the line ``Im z = k`` into itself; this is checked at
    ``samples`` (real parts along the line).  The extension is
    ``R o amap o R`` above the line, with ``R(z) = conj(z) + 2ik``.
    """
    k = float(k)
    if samples is None:
        samples = np.linspace(-6.0, 6.0, 241)
    line = np.asarray(samples, dtype=float) + 1j * k
    with np.errstate(all="ignore"):
        img = amap.func(line)
    dev = np.abs(img.imag - k)
    dev = np.where(np.isfinite(dev), dev, np.inf)
    worst = int(np.argmax(dev))
    if dev[worst] > tol:
        raise ConfigurationError(
            f"{amap.name} does not map Im z = {k:g} into itself: "
            f"worst sample x = {line[worst].real:g} deviates by {dev[worst]:.3e}"
        )
    R = _reflection(k)

    def piecewise(f, conj_deriv=False):
        def g(z):
            up = z.imag > k
            zz = np.where(up, R(z), z)
            out = f(zz)
            if conj_deriv:
                return np.where(up, np.conj(out), out)
            return np.where(up, R(out), out)

        return g

    def doubled(dom):
        if dom.kind is DomainKind.STRIP and math.isclose(dom.params[1], k):
            return strip_domain(dom.params[0], 2 * k - dom.params[0])

        def pred(z, m):
            return dom.contains(z) | dom.contains(R(z)) | (np.abs(z.imag - k) <= m)

        return Domain(DomainKind.USER_CHANNEL, ("doubled", dom.kind.value, k), predicate=pred)

    inv = piecewise(amap.inv) if amap.inv is not None else None
    return AnalyticMap(
        func=piecewise(amap.func),
        deriv=piecewise(amap.deriv, conj_deriv=True),
        source=doubled(amap.source),
        target=doubled(amap.target),
        inv=inv,
        name=f"reflect({amap.name}, Im z={k:g})",
    )


@dataclass(frozen=True)
class MapCheck:
    roundtrip: float
    cauchy_riemann: float
    derivative: float

    def passed(self, roundtrip_tol=1e-9, cr_tol=1e-6, deriv_tol=1e-6):
        return self.roundtrip <= roundtrip_tol and self.cauchy_riemann <= cr_tol and self.derivative <= deriv_tol


def check_map(amap, points, h=1e-5):
    """Worst-case roundtrip error, finite-difference Cauchy-Riemann residual and
    derivative mismatch (both relative to ``|f'|``) over ``points``."""
    z = np.asarray(points, dtype=complex).ravel()
    w = amap(z)
    back = amap.inverse(w)
    roundtrip = float(np.max(np.abs(back - z)))
    d = amap.derivative(z)
    fx = (amap(z + h) - amap(z - h)) / (2 * h)
    fy = (amap(z + 1j * h) - amap(z - 1j * h)) / (2 * h)
    scale = np.abs(d)
    cr = float(np.max(np.abs(fy - 1j * fx) / scale))
    dev = np.maximum(np.abs(fx - d), np.abs(fy / 1j - d))
    return MapCheck(roundtrip, cr, float(np.max(dev / scale)))


__all__ = [
    "AnalyticMap",
    "Domain",
    "DomainKind",
    "MapCheck",
    "STRIP",
    "DISK",
    "UPPER_HALF_PLANE",
    "TWO_SLIT_PLANE",
    "check_map",
    "compose",
    "identity",
    "matching_slit_radius",
    "newton_invert",
    "reflect_across_line",
    "strip_domain",
    "strip_to_disk",
    "strip_to_half_plane",
    "two_slit_map",
    "user_channel",
    "vertical_slit_map",
]
