"""One-parameter flows of the global actions and their infinitesimal generators.

A vector field ``tau d/dt + xi d/dx + phi d/dv`` acts on a function through
the derivative of its flow at zero, ``-tau f_t - xi f_x + phi``.  For the
symmetry generators this gives

    X1 = d/dt                   -f_t
    X2 = d/dx                   -f_x
    X3 = d/dv                   1
    X4 = 2t d/dt + x d/dx + v d/dv      -2t f_t - x f_x + f
    X5 = t d/dt - x d/dv        -t f_t - x
    X6 = n t d/dt - v d/dv      -n t f_t - f

X7 rotates the (x, v) plane and has no action on functions; see
:mod:`filtration_sym.nonglobal`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .global_action import gamma
from .lie_matrix import Generator, GroupSpec, exp_generator
from .scalar_field import DEFAULT_H, ScalarField, partials


@dataclass(frozen=True)
class VectorField:
    index: int
    n: float = 1.0

    def __post_init__(self):
        if self.index not in range(1, 8):
            raise UsageError(f"vector field index must be 1..7, got {self.index!r}")

    def __str__(self):
        return f"X{self.index}(n={self.n:g})" if self.index in (6, 7) else f"X{self.index}"

    def matching_generator(self) -> Generator:
        if self.index == 7:
            raise UsageError("X7 has no matrix generator")
        return Generator(self.index, self.n)


def flow(gen: Generator, eps: float, f: ScalarField, spec: GroupSpec | None = None) -> ScalarField:
    """gamma(exp(eps * gen)) f."""
    return gamma(exp_generator(gen, eps, spec), f)


def infinitesimal_fd(gen: Generator, f: ScalarField, t, x, eps: float = 1e-3, spec: GroupSpec | None = None):
    """Central difference of the flow at eps = 0."""
    if not eps > 0:
        raise UsageError(f"eps must be positive, got {eps!r}")
    plus = flow(gen, eps, f, spec)(t, x)
    minus = flow(gen, -eps, f, spec)(t, x)
    return (plus - minus) / (2 * eps)


def apply_vector_field(vf: VectorField, f: ScalarField, t, x, h: float = DEFAULT_H):
    """Evaluate the action of a symmetry generator on f at (t, x)."""
    i = vf.index
    if i == 7:
        raise UsageError("X7 acts on graphs only; use filtration_sym.nonglobal")
    if i == 3:
        return 1.0 + 0.0 * f(t, x)
    f_t, f_x, _ = partials(f, t, x, h)
    if i == 1:
        return -f_t
    if i == 2:
        return -f_x
    if i == 4:
        return -2 * t * f_t - x * f_x + f(t, x)
    if i == 5:
        return -t * f_t - x
    return -vf.n * t * f_t - f(t, x)
