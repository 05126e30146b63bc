"""The solvable groups G1, G2, G3 as parametrized 4x4 matrix groups.

Every element is stored through its parameters ``(q, r, t, x, s)`` and can be
realized as a matrix on demand::

    G1: [[q^2,      0,    0,   t],      G2: [[e^r q^2, 0,    0, t],
         [0,        q,    0,   x],           [0,       q,    0, x],
         [0,        0,    q,   s],           [0,    -r q,    q, s],
         [0,        0,    0,   1]]           [0,       0,    0, 1]]

    G3: [[r^n q^2,  0,    0,   t],
         [0,        q,    0,   x],
         [0,        0,  q/r,   s],
         [0,        0,    0,   1]]

The group law and inverse are closed-form in the parameters; the matrix
product is the ground truth they are tested against.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, StructureError, UsageError

PATTERN_TOL = 1e-9


class Case(str, enum.Enum):
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"


@dataclass(frozen=True)
class GroupSpec:
    """Which group family; ``n`` is the exponent of the G3 family."""

    case: Case
    n: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "case", Case(self.case))
        if self.case is Case.G3:
            if not math.isfinite(self.n) or self.n == 0:
                raise DomainError(f"G3 requires a finite nonzero n, got {self.n!r}")
        else:
            # n carries no meaning outside G3; normalize so specs compare equal
            object.__setattr__(self, "n", 1.0)
        object.__setattr__(self, "n", float(self.n))

    def __str__(self):
        return f"G3(n={self.n:g})" if self.case is Case.G3 else self.case.value


G1 = GroupSpec(Case.G1)
G2 = GroupSpec(Case.G2)


def G3(n: float) -> GroupSpec:
    return GroupSpec(Case.G3, n)


@dataclass(frozen=True)
class GroupElement:
    """Element of G1/G2/G3 in parameter form.

    ``r`` is ignored (stored as 0) for G1, any real for G2 and positive for G3;
    when omitted it takes its identity value (1 for G3, else 0).
    """

    spec: GroupSpec
    q: float = 1.0
    r: Optional[float] = None
    t: float = 0.0
    x: float = 0.0
    s: float = 0.0

    def __post_init__(self):
        if self.r is None:
            object.__setattr__(self, "r", 1.0 if self.spec.case is Case.G3 else 0.0)
        for name in ("q", "r", "t", "x", "s"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"parameter {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.q <= 0:
            raise DomainError(f"q must be positive, got {self.q!r}")
        case = self.spec.case
        if case is Case.G1:
            object.__setattr__(self, "r", 0.0)
        elif case is Case.G3 and self.r <= 0:
            raise DomainError(f"r must be positive for G3, got {self.r!r}")

    @classmethod
    def identity(cls, spec: GroupSpec) -> GroupElement:
        return cls(spec)

    @property
    def params(self) -> tuple[float, float, float, float, float]:
        return (self.q, self.r, self.t, self.x, self.s)

    def time_scale(self) -> float:
        """Entry (1,1): the factor dividing ``t - t1`` in the actions."""
        case = self.spec.case
        if case is Case.G1:
            return self.q**2
        if case is Case.G2:
            return math.exp(self.r) * self.q**2
        return self.r**self.spec.n * self.q**2

    def v_scale(self) -> float:
        """Entry (3,3): q for G1 and G2, q/r for G3."""
        if self.spec.case is Case.G3:
            return self.q / self.r
        return self.q

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return mul(self, other)


def to_matrix(g: GroupElement) -> np.ndarray:
    m = np.eye(4)
    m[0, 0] = g.time_scale()
    m[1, 1] = g.q
    m[2, 2] = g.v_scale()
    m[0, 3] = g.t
    m[1, 3] = g.x
    m[2, 3] = g.s
    if g.spec.case is Case.G2:
        m[2, 1] = -g.r * g.q
    return m


def _close(a: float, b: float, tol: float = PATTERN_TOL) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def from_matrix(spec: GroupSpec, m) -> GroupElement:
    """Recover parameters from a matrix with the block pattern of ``spec``."""
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise StructureError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise StructureError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(m))))
    free = {(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (1, 3), (2, 3)}
    if spec.case is Case.G2:
        free.add((2, 1))
    for i in range(4):
        for j in range(4):
            if (i, j) not in free and abs(m[i, j]) > PATTERN_TOL * scale:
                raise StructureError(f"entry ({i + 1},{j + 1}) = {m[i, j]!r} must vanish for {spec}")
    if not _close(m[3, 3], 1.0):
        raise StructureError(f"entry (4,4) must be 1, got {m[3, 3]!r}")
    q = float(m[1, 1])
    if q <= 0:
        raise StructureError(f"q = entry (2,2) must be positive, got {q!r}")
    if spec.case is Case.G1:
        r = 0.0
        expected_v = q
    elif spec.case is Case.G2:
        r = float(-m[2, 1] / q)
        expected_v = q
    else:
        if m[2, 2] <= 0:
            raise StructureError(f"entry (3,3) must be positive for G3, got {m[2, 2]!r}")
        r = float(q / m[2, 2])
        expected_v = q / r
    try:
        g = GroupElement(spec, q=q, r=r, t=m[0, 3], x=m[1, 3], s=m[2, 3])
    except DomainError as exc:
        raise StructureError(str(exc)) from exc
    if not _close(m[0, 0], g.time_scale()):
        raise StructureError(f"entry (1,1) = {m[0, 0]!r} inconsistent with {spec} (expected {g.time_scale()!r})")
    if not _close(m[2, 2], expected_v):
        raise StructureError(f"entry (3,3) = {m[2, 2]!r} inconsistent with {spec} (expected {expected_v!r})")
    return g


def _check_same(g1: GroupElement, g2: GroupElement) -> None:
    if g1.spec != g2.spec:
        raise UsageError(f"cannot combine elements of {g1.spec} and {g2.spec}")


def mul(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Group product, equal to the matrix product of the realizations."""
    _check_same(g1, g2)
    case = g1.spec.case
    s = g1.s + g1.v_scale() * g2.s
    if case is Case.G1:
        r = 0.0
    elif case is Case.G2:
        r = g1.r + g2.r
        s -= g1.r * g1.q * g2.x
    else:
        r = g1.r * g2.r
    return GroupElement(
        g1.spec,
        q=g1.q * g2.q,
        r=r,
        t=g1.t + g1.time_scale() * g2.t,
        x=g1.x + g1.q * g2.x,
        s=s,
    )


def inverse(g: GroupElement) -> GroupElement:
    case = g.spec.case
    x = -g.x / g.q
    s = -g.s / g.v_scale()
    if case is Case.G1:
        r = 0.0
    elif case is Case.G2:
        r = -g.r
        # s-component of g*h is s + q (s_h - r x_h); solve for zero
        s = s + g.r * x
    else:
        r = 1.0 / g.r
    return GroupElement(g.spec, q=1.0 / g.q, r=r, t=-g.t / g.time_scale(), x=x, s=s)


@dataclass(frozen=True)
class Generator:
    """Lie algebra basis element xi_1 ... xi_6; ``n`` is used by xi_6 only."""

    index: int
    n: float = 1.0

    def __post_init__(self):
        if self.index not in range(1, 7):
            raise UsageError(f"generator index must be 1..6, got {self.index!r}")
        if self.index == 6 and (self.n == 0 or not math.isfinite(self.n)):
            raise DomainError(f"xi_6 requires a finite nonzero n, got {self.n!r}")

    def __str__(self):
        return f"xi{self.index}(n={self.n:g})" if self.index == 6 else f"xi{self.index}"

    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        i = self.index
        if i in (1, 2, 3):
            m[i - 1, 3] = 1.0
        elif i == 4:
            m[0, 0], m[1, 1], m[2, 2] = 2.0, 1.0, 1.0
        elif i == 5:
            m[0, 0], m[2, 1] = 1.0, -1.0
        else:
            m[0, 0], m[2, 2] = self.n, -1.0
        return m

    def default_spec(self) -> GroupSpec:
        if self.index == 5:
            return G2
        if self.index == 6:
            return G3(self.n)
        return G1

    def compatible(self, spec: GroupSpec) -> bool:
        if self.index == 5:
            return spec.case is Case.G2
        if self.index == 6:
            return spec.case is Case.G3 and spec.n == self.n
        return True


def exp_generator(gen: Generator, eps: float, spec: GroupSpec | None = None) -> GroupElement:
    """exp(eps * gen) in closed form, as an element of ``spec``.

    ``spec`` defaults to the smallest group containing the generator.
    """
    spec = gen.default_spec() if spec is None else spec
    if not gen.compatible(spec):
        raise UsageError(f"{gen} does not lie in the Lie algebra of {spec}")
    i = gen.index
    if i == 1:
        return GroupElement(spec, t=eps)
    if i == 2:
        return GroupElement(spec, x=eps)
    if i == 3:
        return GroupElement(spec, s=eps)
    if i == 4:
        return GroupElement(spec, q=math.exp(eps))
    if i == 5:
        return GroupElement(spec, q=1.0, r=eps)
    return GroupElement(spec, q=1.0, r=math.exp(eps))
