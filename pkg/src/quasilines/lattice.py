"""Dirichlet problems for the Laplacian on a tensor lattice with cut edges.

The discrete operator is the weighted graph Laplacian of the 5-point stencil:
an edge of length ``l`` between nodes carries conductance ``h / l``.  A
boundary that crosses an edge at distance ``d`` from a free node turns that
edge into a Dirichlet link of conductance ``h / d``.  Linear functions are
reproduced exactly, curved boundaries converge at second order, and the
matrix is symmetric positive definite, so the discrete Dirichlet energy is
available for modulus computations.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConfigurationError, ConvergenceError

#: above this many unknowns "auto" switches from sparse LU to algebraic multigrid
DIRECT_LIMIT = 700_000
SOR_MAX_SWEEPS = 1_000_000
SOR_CHECK_EVERY = 25


@dataclass
class Cut:
    """A boundary crossing on the edge leaving free node ``(i, j)`` along ``axis`` in ``direction``."""

    i: int
    j: int
    axis: int
    direction: int
    distance: float
    value: float


@dataclass
class LatticeProblem:
    x: np.ndarray
    y: np.ndarray
    h: float
    fixed: np.ndarray
    values: np.ndarray
    cuts: list = field(default_factory=list)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        shape = (self.x.size, self.y.size)
        if self.fixed.shape != shape or self.values.shape != shape:
            raise ConfigurationError("mask and values must match the lattice shape")
        for c in self.cuts:
            if self.fixed[c.i, c.j]:
                raise ConfigurationError(f"cut at fixed node {(c.i, c.j)}")
            if not (0 < c.distance):
                raise ConfigurationError("cut distance must be positive")
        self._assemble()

    @property
    def shape(self):
        return self.fixed.shape

    def _assemble(self):
        free = ~self.fixed
        nx, ny = self.shape
        index = -np.ones(self.shape, dtype=np.int64)
        index[free] = np.arange(int(free.sum()))
        self.index = index
        n = int(free.sum())
        self.n = n

        # edges removed because a boundary crosses them
        cut_edge = [np.zeros((nx - 1, ny), bool), np.zeros((nx, ny - 1), bool)]
        for c in self.cuts:
            lo_i, lo_j = (c.i, c.j)
            if c.direction < 0:
                if c.axis == 0:
                    lo_i -= 1
                else:
                    lo_j -= 1
            cut_edge[c.axis][lo_i, lo_j] = True

        rows, cols, vals = [], [], []
        diag = np.zeros(n)
        rhs = np.zeros(n)
        c0 = 0.0
        gaps = [np.diff(self.x), np.diff(self.y)]
        for axis in (0, 1):
            if axis == 0:
                a, b = (slice(0, -1), slice(None)), (slice(1, None), slice(None))
                w = np.broadcast_to((self.h / gaps[0])[:, None], (nx - 1, ny))
            else:
                a, b = (slice(None), slice(0, -1)), (slice(None), slice(1, None))
                w = np.broadcast_to((self.h / gaps[1])[None, :], (nx, ny - 1))
            keep = ~cut_edge[axis]
            fa, fb = free[a] & keep, free[b] & keep
            ia, ib = index[a], index[b]
            both = fa & fb
            wa = w[both]
            rows += [ia[both], ib[both]]
            cols += [ib[both], ia[both]]
            vals += [-wa, -wa]
            np.add.at(diag, ia[both], wa)
            np.add.at(diag, ib[both], wa)
            for side_free, side_idx, other in ((fa & ~free[b], ia, b), (fb & ~free[a], ib, a)):
                g = self.values[other][side_free]
                ww = w[side_free]
                np.add.at(diag, side_idx[side_free], ww)
                np.add.at(rhs, side_idx[side_free], ww * g)
                c0 += float(np.sum(ww * g * g))
        for c in self.cuts:
            k = index[c.i, c.j]
            ww = self.h / c.distance
            diag[k] += ww
            rhs[k] += ww * c.value
            c0 += ww * c.value**2
        r = np.arange(n)
        self.matrix = sp.csr_matrix(
            (np.concatenate(vals + [diag]), (np.concatenate(rows + [r]), np.concatenate(cols + [r]))),
            shape=(n, n),
        )
        self.rhs = rhs
        self.boundary_energy = c0
        self._solver = None

    # -- solving -----------------------------------------------------------

    def _factor(self, method):
        if method == "auto":
            method = "direct" if self.n <= DIRECT_LIMIT else "amg"
        if self._solver is not None and self._solver[0] == method:
            return self._solver
        if method == "direct":
            lu = spla.splu(self.matrix.tocsc())
            solve = lu.solve
        elif method == "amg":
            import pyamg

            ml = pyamg.smoothed_aggregation_solver(self.matrix, symmetry="symmetric")

            def solve(b):
                return ml.solve(b, tol=1e-13, accel="cg", maxiter=2000)

        elif method == "sor":
            solve = self._sor
        else:
            raise ConfigurationError(f"unknown solver method {method!r}")
        self._solver = (method, solve)
        return self._solver

    def _sor(self, b, tol=1e-9, omega=None, max_sweeps=SOR_MAX_SWEEPS):
        """Red-black successive over-relaxation on the assembled operator."""
        A = self.matrix
        ii, jj = np.nonzero(~self.fixed)
        red = (ii + jj) % 2 == 0
        black = ~red
        if omega is None:
            omega = 2.0 / (1.0 + np.sin(np.pi / max(self.shape)))
        d = A.diagonal()
        A_rb = A[red][:, black]
        A_br = A[black][:, red]
        u = np.zeros(self.n)
        ur, ub = u[red], u[black]
        br, bb, dr, db = b[red], b[black], d[red], d[black]
        for sweep in range(1, max_sweeps + 1):
            ur += omega * ((br - A_rb @ ub) / dr - ur)
            ub += omega * ((bb - A_br @ ur) / db - ub)
            if sweep % SOR_CHECK_EVERY == 0:
                res = max(np.max(np.abs(br - dr * ur - A_rb @ ub)), np.max(np.abs(bb - db * ub - A_br @ ur)))
                if res <= tol:
                    break
        else:
            raise ConvergenceError(f"SOR did not converge in {max_sweeps} sweeps (residual {res:.3e})", residual=res)
        u[red], u[black] = ur, ub
        self.sor_sweeps = sweep
        return u

    def solve(self, extra_rhs=None, method="auto"):
        """Solve for the free values; returns the full lattice array."""
        _, solve = self._factor(method)
        b = self.rhs if extra_rhs is None else self.rhs + extra_rhs
        u_free = solve(b)
        return self.expand(u_free)

    def solve_free(self, b, method="auto"):
        _, solve = self._factor(method)
        return solve(b)

    def expand(self, u_free):
        full = np.array(self.values, dtype=float)
        full[~self.fixed] = u_free
        return full

    def residual(self, full, extra_rhs=None):
        b = self.rhs if extra_rhs is None else self.rhs + extra_rhs
        return float(np.max(np.abs(self.matrix @ full[~self.fixed] - b))) if self.n else 0.0

    def energy(self, full):
        """Discrete Dirichlet energy ``sum w (u_a - u_b)^2`` over edges touching a free node."""
        u = full[~self.fixed]
        return float(u @ (self.matrix @ u) - 2 * self.rhs @ u + self.boundary_energy)


def uniform_nodes(lo, hi, h, tiny=1e-3):
    """Lattice ``k h`` inside ``(lo, hi)`` plus both end points.

    Nodes closer than ``tiny * h`` to an end are dropped, so every spacing
    lies in ``[tiny h, (1 + tiny) h]``.
    """
    k_lo = int(np.ceil(lo / h + tiny))
    k_hi = int(np.floor(hi / h - tiny))
    inner = np.arange(k_lo, k_hi + 1) * h
    return np.concatenate([[lo], inner, [hi]])
