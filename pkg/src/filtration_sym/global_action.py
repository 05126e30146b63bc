"""Actions of G1, G2, G3 on smooth functions of (t, x).

For ``g = (q, r, t1, x1, s1)`` the linear action is

    (g . f)(t, x) = c f((t - t1) / T, (x - x1) / q)

with ``T`` the (1,1) matrix entry (q^2, e^r q^2 or r^n q^2) and ``c`` the
(3,3) entry (q, or q/r for G3).  The twist ``theta`` adds ``s1`` (and, for
G2, the shear ``-r1 (x - x1)``).  Neither is the symmetry action on its own;
``gamma = theta o linear`` is.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError, UsageError
from .lie_matrix import Case, GroupElement, mul
from .scalar_field import ScalarField


def linear_action(g: GroupElement, f: ScalarField) -> ScalarField:
    T = g.time_scale()
    q = g.q
    c = g.v_scale()
    t1, x1 = g.t, g.x

    def pulled(rule, factor):
        return lambda t, x: factor * f._apply(rule, (t - t1) / T, (x - x1) / q)

    dt = dx = dxx = None
    if f.has_partials:
        dt = pulled(f.dt, c / T)
        dx = pulled(f.dx, c / q)
        dxx = pulled(f.dxx, c / q**2)
    return ScalarField(
        pulled(f.func, c),
        dt=dt,
        dx=dx,
        dxx=dxx,
        domain=f.domain.affine_image(t1, T, x1, q),
        label=f"lin[{_fmt(g)}]({f.label})",
    )


def theta(g: GroupElement, f: ScalarField) -> ScalarField:
    """Additive twist: f + s1, and for G2 additionally - r1 (x - x1)."""
    s1, r1, x1 = g.s, g.r, g.x
    if g.spec.case is Case.G2:
        def value(t, x):
            return f(t, x) + s1 - r1 * (x - x1)

        dx = None if f.dx is None else (lambda t, x: f._apply(f.dx, t, x) - r1)
    else:
        def value(t, x):
            return f(t, x) + s1

        dx = f.dx
    return ScalarField(value, dt=f.dt, dx=dx, dxx=f.dxx, domain=f.domain, label=f"theta[{_fmt(g)}]({f.label})")


def gamma(g: GroupElement, f: ScalarField) -> ScalarField:
    """The global action: theta(g) applied after the linear action of g."""
    return theta(g, linear_action(g, f))


def check_homomorphism(g1: GroupElement, g2: GroupElement, f: ScalarField, samples) -> float:
    """max over samples of |gamma(g1 g2) f - gamma(g1)(gamma(g2) f)|."""
    if g1.spec != g2.spec:
        raise UsageError(f"elements of {g1.spec} and {g2.spec} cannot be composed")
    t, x = _split(samples)
    lhs = gamma(mul(g1, g2), f)
    rhs = gamma(g1, gamma(g2, f))
    for side in (lhs, rhs):
        if not np.all(side.domain.contains(t, x)):
            raise DomainError("sample point outside the domain of a transformed field")
    return float(np.max(np.abs(lhs(t, x) - rhs(t, x))))


def _split(samples):
    pts = np.asarray(samples, dtype=float).reshape(-1, 2)
    return pts[:, 0], pts[:, 1]


def _fmt(g: GroupElement) -> str:
    return f"{g.spec}:q={g.q:g},r={g.r:g},t={g.t:g},x={g.x:g},s={g.s:g}"
