"""Seeded verification suites behind the CLI commands.

Random draws come from ``numpy.random.default_rng(seed)`` (PCG64), so a
suite is a pure function of its arguments.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm

from .errors import FiltrationSymError, SingularityError
from .global_action import check_homomorphism, gamma
from .generator_flow import VectorField, apply_vector_field, infinitesimal_fd
from .lie_matrix import (
    Case,
    Generator,
    GroupElement,
    GroupSpec,
    exp_generator,
    from_matrix,
    inverse,
    mul,
    to_matrix,
)
from .nonglobal import (
    LinearLocalState,
    SampledGraph,
    fold_threshold,
    is_single_valued,
    linear_local_action,
    validity_interval,
    x7_graph_action,
)
from .pde_check import KSpec, STENCIL_FLOOR, invariance_check, invariance_holds
from .report import Report
from .scalar_field import ACTION_FIXTURES, FIXTURES, Rectangle, ScalarField, linear, partials, sample_grid

GROUP_TOL = 1e-10
ACTION_TOL = 1e-9
GENERATOR_TOL = 1e-5


def random_element(rng: np.random.Generator, spec: GroupSpec) -> GroupElement:
    """q in [0.1, 10]; r in [-5, 5] (G2) or [0.1, 10] (G3); t, x, s in [-5, 5]."""
    q = rng.uniform(0.1, 10.0)
    t, x, s = rng.uniform(-5.0, 5.0, size=3)
    if spec.case is Case.G2:
        r = rng.uniform(-5.0, 5.0)
    elif spec.case is Case.G3:
        r = rng.uniform(0.1, 10.0)
    else:
        r = 0.0
    return GroupElement(spec, q=q, r=r, t=t, x=x, s=s)


def param_error(g: GroupElement, h: GroupElement) -> float:
    """Largest parameter discrepancy, relative to max(1, |value|)."""
    return max(abs(a - b) / max(1.0, abs(a), abs(b)) for a, b in zip(g.params, h.params))


def generators_of(spec: GroupSpec) -> list[Generator]:
    gens = [Generator(i) for i in (1, 2, 3, 4)]
    if spec.case is Case.G2:
        gens.append(Generator(5))
    elif spec.case is Case.G3:
        gens.append(Generator(6, spec.n))
    return gens


def verify_group(spec: GroupSpec, trials: int = 1000, seed: int = 0) -> Report:
    rng = np.random.default_rng(seed)
    report = Report("verify-group", {"case": str(spec), "trials": trials, "seed": seed})
    identity = GroupElement.identity(spec)
    assoc = inv = hom = trip = 0.0
    for _ in range(trials):
        a, b, c = (random_element(rng, spec) for _ in range(3))
        assoc = max(assoc, param_error(mul(mul(a, b), c), mul(a, mul(b, c))))
        inv = max(inv, param_error(mul(a, inverse(a)), identity), param_error(mul(inverse(a), a), identity))
        prod = to_matrix(a) @ to_matrix(b)
        hom = max(hom, float(np.max(np.abs(to_matrix(mul(a, b)) - prod) / np.maximum(1.0, np.abs(prod)))))
        trip = max(trip, param_error(from_matrix(spec, to_matrix(a)), a))
    report.add("associativity", assoc, GROUP_TOL, f"{trials} random triples")
    report.add("inverse", inv, GROUP_TOL, f"{trials} random elements")
    report.add("matrix_product", hom, GROUP_TOL, "to_matrix(a*b) vs to_matrix(a) @ to_matrix(b)")
    report.add("round_trip", trip, 1e-12, "from_matrix(to_matrix(g))")
    for gen in generators_of(spec):
        series = one_param = 0.0
        for _ in range(max(1, trials // 10)):
            e1, e2 = rng.uniform(-3.0, 3.0, size=2)
            closed = to_matrix(exp_generator(gen, e1, spec))
            oracle = expm(e1 * gen.matrix())
            series = max(series, float(np.max(np.abs(closed - oracle) / np.maximum(1.0, np.abs(oracle)))))
            joint = mul(exp_generator(gen, e1, spec), exp_generator(gen, e2, spec))
            one_param = max(one_param, param_error(joint, exp_generator(gen, e1 + e2, spec)))
        report.add(f"exp_vs_expm[{gen}]", series, GROUP_TOL, "eps in [-3, 3]")
        report.add(f"one_parameter[{gen}]", one_param, GROUP_TOL, "eps1, eps2 in [-3, 3]")
    return report.finish()


def verify_action(spec: GroupSpec, field: ScalarField | None = None, trials: int = 100, seed: int = 0) -> Report:
    rng = np.random.default_rng(seed)
    params = {"case": str(spec), "trials": trials, "seed": seed, "field": field.label if field else None}
    report = Report("verify-action", params)
    fixtures = ([field] if field is not None else []) + [FIXTURES[k] for k in ACTION_FIXTURES]
    samples = sample_grid(Rectangle(-2, 2, -2, 2), 10, margin=0.0)
    t, x = samples[:, 0], samples[:, 1]
    identity = GroupElement.identity(spec)
    for f in fixtures:
        hom = inv = 0.0
        try:
            exact_identity = float(np.max(np.abs(gamma(identity, f)(t, x) - f(t, x))))
            for _ in range(trials):
                g1, g2 = random_element(rng, spec), random_element(rng, spec)
                hom = max(hom, check_homomorphism(g1, g2, f, samples))
                back = gamma(g1, gamma(inverse(g1), f))(t, x)
                inv = max(inv, float(np.max(np.abs(back - f(t, x)))))
        except FiltrationSymError as exc:
            report.add(f"evaluation[{f.label}]", math.inf, 0.0, str(exc))
            continue
        report.add(f"homomorphism[{f.label}]", hom, ACTION_TOL, f"{trials} random pairs, 100 points")
        report.add(f"identity[{f.label}]", exact_identity, 0.0, "gamma(e) f == f")
        report.add(f"inverse[{f.label}]", inv, ACTION_TOL, f"{trials} random elements")
    return report.finish()


def verify_generators(spec: GroupSpec, eps: float = 1e-3, points: int = 50, seed: int = 0) -> Report:
    rng = np.random.default_rng(seed)
    report = Report("verify-generators", {"case": str(spec), "eps": eps, "points": points, "seed": seed})
    pts = rng.uniform(-1.0, 1.0, size=(points, 2))
    t, x = pts[:, 0], pts[:, 1]
    for gen in generators_of(spec):
        vf = VectorField(gen.index, gen.n)
        err = 0.0
        for f in FIXTURES.values():
            fd = infinitesimal_fd(gen, f, t, x, eps, spec)
            err = max(err, float(np.max(np.abs(fd - apply_vector_field(vf, f, t, x)))))
        report.add(f"generator[{gen}~{vf}]", err, GENERATOR_TOL, f"{len(FIXTURES)} fixtures, {points} points")
    return report.finish()


def verify_invariance(
    f: ScalarField, k: KSpec, g: GroupElement, grid, h: float = 1e-4, stencil: bool = False
) -> Report:
    params = {"field": f.label, "k": repr(k), "group": repr(g), "points": len(grid), "h": h, "stencil": stencil}
    report = Report("invariance", params)
    before, after = invariance_check(f, k, g, grid, h, stencil)
    report.add("residual_before", before, 1e-6 if stencil else 1e-10)
    report.add(
        "residual_after",
        after,
        10 * max(before, STENCIL_FLOOR),
        "after <= 10 * max(before, 1e-7)",
        passed=invariance_holds(before, after),
    )
    return report.finish()


CSV_HEADER = "eps,single_valued,a_prime,b_prime,notes"


def case4_sweep(
    eps_values,
    n: float = 1.0,
    line: tuple[float, float] | None = None,
    field: ScalarField | None = None,
    x_range: tuple[float, float] = (-2.0, 2.0),
    t_grid=(0.0, 0.5, 1.0),
    x_samples: int = 401,
) -> tuple[Report, list[str]]:
    """Sweep the X7 flow over ``eps_values`` for a line ``(a, b)`` or a field."""
    if (line is None) == (field is None):
        raise ValueError("give exactly one of line or field")
    f = linear(*line) if line is not None else field
    params = {"n": n, "source": f.label, "x_range": list(x_range), "eps_count": len(eps_values)}
    report = Report("case4", params)
    graph = SampledGraph.from_field(f, t_grid, np.linspace(x_range[0], x_range[1], x_samples))
    threshold = fold_threshold(f, x_range, t=t_grid[0])
    report.add("fold_threshold", threshold, math.pi, "smallest positive fold angle", passed=True)
    if line is not None:
        lo, hi = validity_interval(line[0])
        report.add("threshold_matches_validity_interval", abs(threshold - hi), 1e-12, f"a={line[0]!r}")

    xs = np.linspace(x_range[0], x_range[1], x_samples)
    slopes = np.concatenate([np.atleast_1d(partials(f, np.full_like(xs, tt), xs)[1]) for tt in t_grid])
    rows = [CSV_HEADER]
    mismatches = 0
    for eps in eps_values:
        eps = float(eps)
        single, _ = is_single_valued(x7_graph_action(graph, eps, n))
        # continuum oracle: cos + f_x sin keeps one strict sign
        margin = math.cos(eps) + slopes * math.sin(eps)
        clear = min(abs(margin.min()), abs(margin.max())) > 1e-3
        expected = bool(margin.min() > 0 or margin.max() < 0)
        if clear and single != expected:
            mismatches += 1
        a_prime = b_prime = ""
        notes = []
        if line is not None:
            try:
                state = linear_local_action(LinearLocalState(*line), eps)
                a_prime, b_prime = repr(state.a), repr(state.b)
                if not lo < eps < hi:
                    notes.append("past_singularity")
            except SingularityError:
                notes.append("singular")
        elif eps > 0 and abs(eps - threshold) <= 0.5 * _spacing(eps_values):
            notes.append("fold_threshold")
        rows.append(f"{eps!r},{str(single).lower()},{a_prime},{b_prime},{';'.join(notes)}")
    report.add("detector_vs_continuum", mismatches, 0, "rows with |margin| > 1e-3")
    return report.finish(), rows


def _spacing(values) -> float:
    values = np.sort(np.asarray(values, dtype=float))
    return float(np.min(np.diff(values))) if len(values) > 1 else math.inf

