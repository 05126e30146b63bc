import numpy as np
from hypothesis import strategies as st

from filtration_sym import G1, G2, G3, GroupElement

SPECS = [G1, G2, G3(-1.0), G3(1.0), G3(2.0)]
SPEC_IDS = [str(s) for s in SPECS]


def matrix_series(m, terms=40):
    """Truncated exponential series sum_k m^k / k!; independent of the closed forms."""
    out = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, terms):
        term = term @ m / k
        out = out + term
    return out


def close_params(g, h, tol):
    return all(abs(a - b) <= tol * max(1.0, abs(a), abs(b)) for a, b in zip(g.params, h.params))


reals = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
positives = st.floats(0.1, 10, allow_nan=False, allow_infinity=False)


@st.composite
def elements(draw, spec):
    if spec.case.value == "G2":
        r = draw(reals)
    elif spec.case.value == "G3":
        r = draw(positives)
    else:
        r = 0.0
    return GroupElement(spec, q=draw(positives), r=r, t=draw(reals), x=draw(reals), s=draw(reals))
