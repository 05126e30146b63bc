"""Residuals of v_t = k(v_x) v_xx and solution-invariance checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, UsageError
from .expression import compile_expression, to_source
from .global_action import gamma
from .lie_matrix import Case, GroupElement
from .scalar_field import DEFAULT_H, ScalarField, partials, sample_grid, stencil_partials

K_PRIME_FLOOR = 1e-12
STENCIL_FLOOR = 1e-7


class KSpec:
    """Diffusivity k(p), p = v_x."""

    name = "k"

    def __call__(self, p):
        raise NotImplementedError

    def symmetry_case(self) -> Optional[Case]:
        """Group whose gamma action is a symmetry for this k (beyond G1)."""
        return None


@dataclass(frozen=True)
class Generic(KSpec):
    """User-supplied k; only the G1 symmetries are assumed."""

    func: Callable
    label: str = "generic"
    name = "generic"

    @classmethod
    def from_expression(cls, src: str) -> Generic:
        tree, fn = compile_expression(src, ("p",))
        return cls(fn, to_source(tree))

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        with np.errstate(all="ignore"):
            value = np.asarray(self.func(p), dtype=float)
            h = 1e-6 * np.maximum(1.0, np.abs(p))
            slope = (np.asarray(self.func(p + h), dtype=float) - np.asarray(self.func(p - h), dtype=float)) / (2 * h)
        if not np.all(np.isfinite(value)):
            raise DomainError(f"k = {self.label} is not finite at some v_x")
        if np.any(np.abs(slope) <= K_PRIME_FLOOR):
            raise DomainError(f"k = {self.label} has k'(p) = 0 at some v_x; the equation requires k' != 0")
        return value

    def symmetry_case(self):
        return Case.G1


@dataclass(frozen=True)
class Exp(KSpec):
    name = "exp"

    def __call__(self, p):
        return np.exp(p)

    def symmetry_case(self):
        return Case.G2


@dataclass(frozen=True)
class Power(KSpec):
    """k(p) = p^n; requires p > 0 unless n is a nonnegative integer."""

    n: float
    name = "power"

    def __post_init__(self):
        if self.n == 0 or not math.isfinite(self.n):
            raise DomainError(f"power diffusivity requires finite n != 0, got {self.n!r}")

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        if not (self.n > 0 and float(self.n).is_integer()) and np.any(p <= 0):
            raise DomainError(f"k(p) = p^{self.n:g} needs v_x > 0")
        return p**self.n

    def symmetry_case(self):
        return Case.G3


@dataclass(frozen=True)
class ArctanExp(KSpec):
    """k(p) = exp(n arctan p) / (1 + p^2); its extra symmetry X7 does not globalize."""

    n: float
    name = "arctan-exp"

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        return np.exp(self.n * np.arctan(p)) / (1 + p**2)


def residual(f: ScalarField, k: KSpec, t, x, h: float = DEFAULT_H, stencil: bool = False):
    """f_t - k(f_x) f_xx; analytic partials unless absent or ``stencil``."""
    f_t, f_x, f_xx = stencil_partials(f, t, x, h) if stencil else partials(f, t, x, h)
    return f_t - k(f_x) * f_xx


def check_symmetry_match(k: KSpec, g: GroupElement) -> None:
    """G1 is a symmetry group for every k; G2 needs Exp and G3 needs Power(n)."""
    case = g.spec.case
    if case is Case.G1:
        return
    if k.symmetry_case() is not case:
        raise UsageError(f"{g.spec} is not a symmetry group for k = {k.name}")
    if case is Case.G3 and k.n != g.spec.n:
        raise UsageError(f"G3(n={g.spec.n:g}) does not match k(p) = p^{k.n:g}")


def invariance_check(f: ScalarField, k: KSpec, g: GroupElement, grid, h: float = DEFAULT_H, stencil: bool = False):
    """(max |residual| of f, max |residual| of gamma(g) f) over ``grid``.

    Grid points are given in the coordinates of each field, i.e. both
    residuals are evaluated at the same (t, x).
    """
    check_symmetry_match(k, g)
    pts = np.asarray(grid, dtype=float).reshape(-1, 2)
    t, x = pts[:, 0], pts[:, 1]
    before = residual(f, k, t, x, h, stencil)
    after = residual(gamma(g, f), k, t, x, h, stencil)
    return float(np.max(np.abs(before))), float(np.max(np.abs(after)))


def invariance_holds(before: float, after: float, floor: float = STENCIL_FLOOR, factor: float = 10.0) -> bool:
    """Transformed residual within ``factor`` of the original (or of the stencil floor)."""
    return after <= factor * max(before, floor)


def default_grid(f: ScalarField, g: GroupElement, n: int = 20, margin: float = 0.1):
    """n x n grid inside the domains of both f and gamma(g) f."""
    return sample_grid(f.domain.intersect(gamma(g, f).domain), n, margin)
