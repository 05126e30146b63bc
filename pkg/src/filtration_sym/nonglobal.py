"""The rotation symmetry X7 of k(p) = exp(n arctan p)/(1 + p^2).

The flow of ``X7 = n t d/dt - x d/dv + v d/dx`` on (t, x, v)-space is

    (t, x, v) -> (e^{n eps} t, x cos eps + v sin eps, v cos eps - x sin eps)

which rotates solution graphs in the (x, v) plane.  A rotated graph stays
the graph of a function only while ``cos eps + f_x sin eps`` keeps its sign,
so no global action on functions exists.  This module transforms sampled
graphs, detects folds, and handles the one family the rotation does act on
exactly: lines ``v = a x + b``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from .errors import InsufficientDataError, SingularityError, UsageError
from .scalar_field import ScalarField, partials

SINGULAR_TOL = 1e-12
MONOTONE_TOL = 1e-9


@dataclass(frozen=True)
class SampledGraph:
    """Graph of a field on a tensor grid; arrays have shape (len(t_grid), len(x_grid))."""

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    source: str = ""

    @classmethod
    def from_field(cls, f: ScalarField, t_grid, x_grid) -> SampledGraph:
        t_grid = np.asarray(t_grid, dtype=float)
        x_grid = np.asarray(x_grid, dtype=float)
        for name, grid in (("t", t_grid), ("x", x_grid)):
            if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
                raise UsageError(f"{name} grid must be one-dimensional and strictly increasing")
        tt, xx = np.meshgrid(t_grid, x_grid, indexing="ij")
        return cls(tt, xx, np.asarray(f(tt, xx), dtype=float), f.label)

    def points(self) -> np.ndarray:
        return np.stack([self.t.ravel(), self.x.ravel(), self.v.ravel()], axis=1)


def x7_graph_action(graph: SampledGraph, eps: float, n: float) -> SampledGraph:
    """Move every sample point along the X7 flow; the result need not be a graph."""
    c, s = math.cos(eps), math.sin(eps)
    return SampledGraph(
        math.exp(n * eps) * graph.t,
        graph.x * c + graph.v * s,
        graph.v * c - graph.x * s,
        f"x7[eps={eps!r}, n={n!r}]({graph.source})",
    )


@dataclass(frozen=True)
class LinearLocalState:
    a: float
    b: float


def linear_local_action(state: LinearLocalState, eps: float, *, continuation: bool = False) -> LinearLocalState:
    """Slope and intercept of the rotated line ``v = a x + b``.

    With ``continuation=True`` the line is followed along the flow from 0 to
    eps, which is only possible inside :func:`validity_interval`; leaving it
    means crossing the vertical-slope singularity and raises.
    """
    a, b = state.a, state.b
    denom = a * math.sin(eps) + math.cos(eps)
    if abs(denom) <= SINGULAR_TOL or (continuation and denom < 0):
        raise SingularityError(eps, a)
    return LinearLocalState((a * math.cos(eps) - math.sin(eps)) / denom, b / denom)


def validity_interval(a: float) -> tuple[float, float]:
    """Maximal open interval around 0 on which a sin eps + cos eps > 0."""
    # a sin + cos = sqrt(1 + a^2) cos(eps - phi)
    phi = math.atan2(a, 1.0)
    return phi - math.pi / 2, phi + math.pi / 2


@dataclass(frozen=True)
class FoldWitness:
    """Two points of one t-slice with equal x-coordinate and distinct v."""

    slice_index: int
    first: tuple[float, float, float]
    second: tuple[float, float, float]


def is_single_valued(graph: SampledGraph, axis_tolerance: float = MONOTONE_TOL) -> tuple[bool, Optional[FoldWitness]]:
    """Decide whether a transformed sampled graph is still a function graph.

    Each t-slice must have x strictly monotone along the original sample
    order.  On failure the witness is built on the piecewise-linear
    interpolant: two points at the same x on the two sides of a fold.
    """
    if graph.x.ndim != 2 or graph.x.shape[1] < 2:
        raise InsufficientDataError("every t-slice needs at least two points")
    for i in range(graph.x.shape[0]):
        dx = np.diff(graph.x[i])
        if np.all(dx > axis_tolerance) or np.all(dx < -axis_tolerance):
            continue
        return False, _fold_witness(i, graph.t[i], graph.x[i], graph.v[i], axis_tolerance)
    return True, None


def _fold_witness(i, t_row, x_row, v_row, tol) -> FoldWitness:
    dx = np.diff(x_row)
    flat = np.flatnonzero(np.abs(dx) <= tol)
    if flat.size:
        j = flat[0]
        return FoldWitness(i, _point(t_row, x_row, v_row, j), _point(t_row, x_row, v_row, j + 1))
    # x rises then falls (or vice versa); the runs on both sides of the
    # first turn overlap in x
    direction = np.sign(dx[0])
    turn = int(np.flatnonzero(np.sign(dx) != direction)[0])
    rest = np.flatnonzero(np.sign(dx[turn:]) != -direction)
    stop = turn + (int(rest[0]) if rest.size else len(dx) - turn)
    first, second = slice(0, turn + 1), slice(turn, stop + 1)
    lo = max(x_row[first].min(), x_row[second].min())
    hi = min(x_row[first].max(), x_row[second].max())
    level = 0.5 * (lo + hi)
    v1 = _interp(level, x_row[first], v_row[first])
    v2 = _interp(level, x_row[second], v_row[second])
    if abs(v1 - v2) <= tol:
        return FoldWitness(i, _point(t_row, x_row, v_row, turn), _point(t_row, x_row, v_row, turn + 1))
    t0 = float(t_row[0])
    return FoldWitness(i, (t0, float(level), v1), (t0, float(level), v2))


def _point(t_row, x_row, v_row, j):
    return (float(t_row[j]), float(x_row[j]), float(v_row[j]))


def _interp(level, xs, vs):
    order = np.argsort(xs)
    return float(np.interp(level, xs[order], vs[order]))


def fold_threshold(f: ScalarField, x_range: tuple[float, float], n_samples: int = 1001, t: float = 0.0) -> float:
    """Smallest eps > 0 at which the rotated graph of f(t, .) over x_range folds.

    That is the first zero of ``min_i (cos eps + f_x(t, x_i) sin eps)``.
    """
    if n_samples < 2:
        raise InsufficientDataError("fold_threshold needs at least two samples")
    xs = np.linspace(x_range[0], x_range[1], n_samples)
    _, slopes, _ = partials(f, np.full_like(xs, t), xs)
    slopes = np.atleast_1d(np.asarray(slopes, dtype=float))
    if np.ptp(slopes) == 0:
        return validity_interval(float(slopes[0]))[1]

    def margin(eps):
        return float(np.min(math.cos(eps) + slopes * math.sin(eps)))

    # margin(0) = 1 and margin(pi) = -1; one sign change in between
    return bisect(margin, 0.0, math.pi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)
