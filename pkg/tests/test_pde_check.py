import math

import numpy as np
import pytest

from filtration_sym import (
    G1,
    G2,
    G3,
    ArctanExp,
    DomainError,
    Exp,
    Generator,
    Generic,
    GroupElement,
    Power,
    UsageError,
    exp_generator,
    gamma,
    invariance_check,
    linear,
    residual,
    separable_exp,
    separable_power,
)
from filtration_sym.pde_check import default_grid, invariance_holds
from filtration_sym.scalar_field import FIXTURES, sample_grid
from filtration_sym.suites import random_element


def test_residual_examples():
    for k in (Exp(), Power(1), Power(2.5), Generic.from_expression("p^3 + p"), ArctanExp(2)):
        assert residual(linear(3, 4), k, 1.3, -0.4) == 0
    assert residual(separable_exp(1, 1), Exp(), 0.0, 0.0) == 0
    assert residual(separable_power(1, 1, 1), Power(1), 0.0, 0.0) == pytest.approx(0, abs=1e-15)


def test_residual_stencil_floor():
    f = separable_exp(1, 1)
    pts = sample_grid(f.domain, 20)
    r = residual(f, Exp(), pts[:, 0], pts[:, 1], 1e-4, stencil=True)
    assert 0 < np.max(np.abs(r)) <= 1e-6


def test_k_domains():
    with pytest.raises(DomainError):
        Power(0.5)(np.array([1.0, -1.0]))
    assert Power(2)(-3.0) == 9
    with pytest.raises(DomainError):
        Power(0)
    with pytest.raises(DomainError):
        residual(linear(-1, 0), Power(1.5), 0.0, 0.0)
    with pytest.raises(DomainError):
        Generic.from_expression("3")(1.0)  # k' = 0
    with pytest.raises(DomainError):
        Generic.from_expression("p^2")(0.0)
    assert ArctanExp(0)(1.0) == pytest.approx(0.5)


def test_generic_expression():
    k = Generic.from_expression("p^3 + p")
    assert k(2.0) == 10
    assert k.label == "((p ^ 3.0) + p)"


def test_invariance_examples(rng):
    grid = sample_grid(linear(3, 4).domain, 10)
    k = Generic.from_expression("p^3 + p")
    for _ in range(5):
        before, after = invariance_check(linear(3, 4), k, random_element(rng, G1), grid)
        assert before == 0 and after <= 1e-10
    f = separable_exp(1, 1)
    g = GroupElement(G2, q=2, r=1, t=1, x=0, s=3)
    before, after = invariance_check(f, Exp(), g, default_grid(f, g), 1e-4, stencil=True)
    assert before <= 1e-6 and after <= 1e-6
    e = GroupElement.identity(G2)
    before, after = invariance_check(f, Exp(), e, default_grid(f, e))
    assert before == after


def test_mismatched_symmetry_rejected():
    f = separable_exp(1, 1)
    grid = sample_grid(f.domain, 5)
    with pytest.raises(UsageError):
        invariance_check(f, Power(1), GroupElement(G2), grid)
    with pytest.raises(UsageError):
        invariance_check(f, Exp(), GroupElement(G3(1)), grid)
    with pytest.raises(UsageError):
        invariance_check(separable_power(1, 1, 2), Power(2), GroupElement(G3(1)), grid)
    with pytest.raises(UsageError):
        invariance_check(f, ArctanExp(1), GroupElement(G2), grid)


def matching_solutions(rng):
    a, c = rng.uniform(0.5, 2), rng.uniform(0.5, 2)
    yield separable_exp(a, c), Exp(), G2
    for n in (1.0, 2.0, 0.5, -0.5):
        yield separable_power(a, c, n), Power(n), G3(n)
    yield linear(a, c), Generic.from_expression("exp(p) + p"), G1


def test_random_invariance(rng):
    for f, k, spec in matching_solutions(rng):
        for _ in range(50):
            g = random_element(rng, spec)
            grid = default_grid(f, g)
            before, after = invariance_check(f, k, g, grid)
            assert invariance_holds(before, after), (f.label, spec, g, before, after)
            assert after <= 1e-10 * max(1.0, np.max(np.abs(gamma(g, f).dt(grid[:, 0], grid[:, 1]))))


def high_order_partials(f, t, x, h=1e-2):
    """Sixth-order central differences, independent of the package stencils."""
    w1 = np.array([-1, 9, -45, 0, 45, -9, 1]) / 60
    w2 = np.array([2, -27, 270, -490, 270, -27, 2]) / 180
    k = np.arange(-3, 4)
    ft = sum(w * f(t + j * h, x) for w, j in zip(w1, k)) / h
    fx = sum(w * f(t, x + j * h) for w, j in zip(w1, k)) / h
    fxx = sum(w * f(t, x + j * h) for w, j in zip(w2, k)) / h**2
    return ft, fx, fxx


def test_chain_rule_identity(rng):
    f = FIXTURES["exp(t/2)*sin(x)"]
    for _ in range(20):
        g = random_element(rng, G1)
        h = gamma(g, f)
        t, x = rng.uniform(-2, 2, (2, 100))
        pt, px = (t - g.t) / g.q**2, (x - g.x) / g.q
        vt, vx, vxx = high_order_partials(f, pt, px)
        assert np.allclose(h.dt(t, x), vt / g.q, rtol=1e-8, atol=1e-8)
        assert np.allclose(h.dx(t, x), vx, rtol=1e-8, atol=1e-8)
        assert np.allclose(h.dxx(t, x), vxx / g.q, rtol=1e-8, atol=1e-8)


def test_wrong_symmetry_breaks_solutions():
    f = separable_power(1, 1, 1)
    h = gamma(exp_generator(Generator(5), 0.5), f)
    pts = sample_grid(f.domain.intersect(h.domain), 20)
    assert np.max(np.abs(residual(f, Power(1), pts[:, 0], pts[:, 1]))) <= 1e-12
    assert np.max(np.abs(residual(h, Power(1), pts[:, 0], pts[:, 1]))) > 1e-2


def test_invariance_holds_rule():
    assert invariance_holds(0.0, 9e-7)
    assert not invariance_holds(0.0, 1.1e-6)
    assert invariance_holds(1e-5, 9e-5)
    assert not invariance_holds(1e-5, 1.1e-4)
    assert math.isclose(10 * 1e-7, 1e-6)
