"""Global Lie group actions for the symmetries of v_t = k(v_x) v_xx."""

from .errors import (
    DomainError,
    ExpressionError,
    FiltrationSymError,
    InsufficientDataError,
    LexError,
    ParseError,
    SingularityError,
    StructureError,
    UsageError,
)
from .generator_flow import VectorField, apply_vector_field, flow, infinitesimal_fd
from .global_action import check_homomorphism, gamma, linear_action, theta
from .lie_matrix import (
    G1,
    G2,
    G3,
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
    FoldWitness,
    LinearLocalState,
    SampledGraph,
    fold_threshold,
    is_single_valued,
    linear_local_action,
    validity_interval,
    x7_graph_action,
)
from .pde_check import ArctanExp, Exp, Generic, KSpec, Power, invariance_check, residual
from .scalar_field import (
    PLANE,
    Rectangle,
    ScalarField,
    eval_field,
    linear,
    partials,
    separable_exp,
    separable_power,
)
from .expression import parse_expression, to_source

__version__ = "0.1.0"
