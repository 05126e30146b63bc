"""Smooth functions f(t, x) on (subsets of) the plane.

A :class:`ScalarField` wraps a vectorized evaluation rule, an open
rectangular domain, and optionally analytic partials ``f_t``, ``f_x``,
``f_xx``.  Fields without analytic partials are differentiated with central
stencils.  The exact-solution constructors build closed-form solutions of
``v_t = k(v_x) v_xx`` with their partials attached.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .expression import compile_expression, to_source

DEFAULT_H = 1e-4

inf = math.inf


@dataclass(frozen=True)
class Rectangle:
    """Open box (t_min, t_max) x (x_min, x_max); infinite bounds allowed."""

    t_min: float = -inf
    t_max: float = inf
    x_min: float = -inf
    x_max: float = inf

    def __post_init__(self):
        if not (self.t_min < self.t_max and self.x_min < self.x_max):
            raise DomainError(f"empty rectangle {self}")

    @property
    def is_plane(self) -> bool:
        return self == PLANE

    def contains(self, t, x):
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        return (self.t_min < t) & (t < self.t_max) & (self.x_min < x) & (x < self.x_max)

    def intersect(self, other: Rectangle) -> Rectangle:
        return Rectangle(
            max(self.t_min, other.t_min),
            min(self.t_max, other.t_max),
            max(self.x_min, other.x_min),
            min(self.x_max, other.x_max),
        )

    def affine_image(self, t_shift: float, t_scale: float, x_shift: float, x_scale: float) -> Rectangle:
        """Image under (t, x) -> (t_shift + t_scale t, x_shift + x_scale x), scales > 0."""
        return Rectangle(
            t_shift + t_scale * self.t_min,
            t_shift + t_scale * self.t_max,
            x_shift + x_scale * self.x_min,
            x_shift + x_scale * self.x_max,
        )


PLANE = Rectangle()


class ScalarField:
    """A real function of (t, x), evaluated elementwise on arrays."""

    def __init__(
        self,
        func: Callable,
        *,
        dt: Optional[Callable] = None,
        dx: Optional[Callable] = None,
        dxx: Optional[Callable] = None,
        domain: Rectangle = PLANE,
        label: str = "",
    ):
        self.func = func
        self.dt = dt
        self.dx = dx
        self.dxx = dxx
        self.domain = domain
        self.label = label

    def __repr__(self):
        return f"ScalarField({self.label or self.func!r}, domain={self.domain})"

    @property
    def has_partials(self) -> bool:
        return self.dt is not None and self.dx is not None and self.dxx is not None

    def check_domain(self, t, x) -> None:
        if self.domain.is_plane:
            return
        tb, xb = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        outside = ~self.domain.contains(tb, xb)
        if np.any(outside):
            i = np.flatnonzero(outside)[0]
            raise DomainError(
                f"point (t={tb.ravel()[i]!r}, x={xb.ravel()[i]!r}) outside domain {self.domain} of {self.label or 'field'}"
            )

    def _apply(self, rule, t, x):
        self.check_domain(t, x)
        with np.errstate(all="ignore"):
            value = rule(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        value = np.asarray(value, dtype=float)
        if not np.all(np.isfinite(value)):
            raise DomainError(f"{self.label or 'field'} is not finite at some requested point")
        return value if value.ndim else float(value)

    def __call__(self, t, x):
        return self._apply(self.func, t, x)

    def without_partials(self) -> ScalarField:
        """Same field, forced onto stencil differentiation."""
        return ScalarField(self.func, domain=self.domain, label=self.label)

    @classmethod
    def from_expression(cls, src: str, domain: Rectangle = PLANE) -> ScalarField:
        tree, fn = compile_expression(src, ("t", "x"))
        return cls(fn, domain=domain, label=to_source(tree))


def eval_field(f: ScalarField, t, x):
    return f(t, x)


def partials(f: ScalarField, t, x, h: float = DEFAULT_H):
    """(f_t, f_x, f_xx): analytic when attached, else second-order stencils."""
    if f.has_partials:
        return f._apply(f.dt, t, x), f._apply(f.dx, t, x), f._apply(f.dxx, t, x)
    return stencil_partials(f, t, x, h)


def stencil_partials(f: ScalarField, t, x, h: float = DEFAULT_H):
    if not h > 0:
        raise DomainError(f"stencil step must be positive, got {h!r}")
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    f0 = f(t, x)
    ft = (f(t + h, x) - f(t - h, x)) / (2 * h)
    fxp = f(t, x + h)
    fxm = f(t, x - h)
    fx = (fxp - fxm) / (2 * h)
    fxx = (fxp - 2 * f0 + fxm) / h**2
    return ft, fx, fxx


# exact solutions of v_t = k(v_x) v_xx


def linear(a: float, b: float) -> ScalarField:
    """v = a x + b; solves the equation for every k."""
    return ScalarField(
        lambda t, x: a * x + b + 0 * t,
        dt=_zeros,
        dx=lambda t, x: np.full(np.broadcast(t, x).shape, float(a)),
        dxx=_zeros,
        label=f"linear(a={a!r}, b={b!r})",
    )


def _half_plane(a: float, c: float) -> Rectangle:
    """{x : a x + c > 0} as a rectangle."""
    if a > 0:
        return Rectangle(x_min=-c / a)
    if a < 0:
        return Rectangle(x_max=-c / a)
    if c > 0:
        return PLANE
    raise DomainError(f"a x + c > 0 is empty for a={a!r}, c={c!r}")


def separable_exp(a: float, c: float) -> ScalarField:
    """v = a t + (a x + c)(ln(a x + c) - 1)/a, a solution for k(p) = e^p."""
    if a == 0:
        raise DomainError("separable_exp requires a != 0")
    return ScalarField(
        lambda t, x: a * t + (a * x + c) * (np.log(a * x + c) - 1) / a,
        dt=lambda t, x: np.full(np.broadcast(t, x).shape, float(a)),
        dx=lambda t, x: np.log(a * x + c) + 0 * t,
        dxx=lambda t, x: a / (a * x + c) + 0 * t,
        domain=_half_plane(a, c),
        label=f"separable_exp(a={a!r}, c={c!r})",
    )


def separable_power(a: float, c: float, n: float) -> ScalarField:
    """v = a t + ((n+1)(a x + c))^((n+2)/(n+1)) / (a (n+2)), a solution for k(p) = p^n.

    On its domain v_x = ((n+1)(a x + c))^(1/(n+1)) > 0.
    """
    if a == 0:
        raise DomainError("separable_power requires a != 0")
    if n in (0, -1, -2):
        raise DomainError(f"separable_power requires n not in {{0, -1, -2}}, got {n!r}")
    m = n + 1

    def u(x):
        return m * (a * x + c)

    return ScalarField(
        lambda t, x: a * t + u(x) ** ((n + 2) / m) / (a * (n + 2)),
        dt=lambda t, x: np.full(np.broadcast(t, x).shape, float(a)),
        dx=lambda t, x: u(x) ** (1 / m) + 0 * t,
        dxx=lambda t, x: a * u(x) ** (-n / m) + 0 * t,
        domain=_half_plane(m * a, m * c),
        label=f"separable_power(a={a!r}, c={c!r}, n={n!r})",
    )


# smooth fixtures with analytic partials, used by the verification suites


def _fixture(label, func, dt, dx, dxx):
    return ScalarField(func, dt=dt, dx=dx, dxx=dxx, label=label)


def _zeros(t, x):
    return np.zeros(np.broadcast(t, x).shape)


def _ones(t, x):
    return np.ones(np.broadcast(t, x).shape)


FIXTURES = {
    "t + x": _fixture("t + x", lambda t, x: t + x, _ones, _ones, _zeros),
    "x^2": _fixture("x^2", lambda t, x: x**2 + 0 * t, _zeros, lambda t, x: 2 * x + 0 * t, lambda t, x: 2 + _zeros(t, x)),
    "sin(x) + t": _fixture(
        "sin(x) + t", lambda t, x: np.sin(x) + t, _ones, lambda t, x: np.cos(x) + 0 * t, lambda t, x: -np.sin(x) + 0 * t
    ),
    "t*x": _fixture("t*x", lambda t, x: t * x, lambda t, x: x + 0 * t, lambda t, x: t + 0 * x, _zeros),
    "exp(t/2)*sin(x)": _fixture(
        "exp(t/2)*sin(x)",
        lambda t, x: np.exp(t / 2) * np.sin(x),
        lambda t, x: 0.5 * np.exp(t / 2) * np.sin(x),
        lambda t, x: np.exp(t / 2) * np.cos(x),
        lambda t, x: -np.exp(t / 2) * np.sin(x),
    ),
}

# the three fixtures of the action-homomorphism suite
ACTION_FIXTURES = ("t + x", "x^2", "sin(x) + t")


def sample_grid(domain: Rectangle, n: int = 10, margin: float = 0.1, box: Rectangle = Rectangle(-1, 1, -1, 1)):
    """Uniform n x n grid of points (shape (n*n, 2)) inside ``domain``.

    Finite domain bounds are pulled in by ``margin``; infinite directions are
    filled from ``box`` (shifted next to a finite bound when needed).
    """

    def axis(lo, hi, blo, bhi):
        lo = lo + margin if math.isfinite(lo) else lo
        hi = hi - margin if math.isfinite(hi) else hi
        a, b = max(lo, blo), min(hi, bhi)
        if not a < b:
            # box misses the domain: take a box-sized interval at the finite edge
            width = bhi - blo
            a = lo if math.isfinite(lo) else hi - width
            b = hi if math.isfinite(hi) else lo + width
        if not a < b:
            raise DomainError(f"domain too small for a sampling grid with margin {margin!r}")
        return np.linspace(a, b, n)

    ts = axis(domain.t_min, domain.t_max, box.t_min, box.t_max)
    xs = axis(domain.x_min, domain.x_max, box.x_min, box.x_max)
    tt, xx = np.meshgrid(ts, xs, indexing="ij")
    return np.column_stack([tt.ravel(), xx.ravel()])
