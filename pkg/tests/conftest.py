import math

import numpy as np
import pytest
from hypothesis import strategies as st

from pqosc.params import DeformationParams
from pqosc.positivity import admissible_gamma

# cap on 2*gamma when the admissible interval is unbounded
TWO_GAMMA_CAP = 10.0


def draw_admissible(rng, margin=1e-3, p_range=(0.5, 2.0), exp_range=(-2.0, 2.0)):
    """Random parameters with 2*gamma strictly inside the positivity interval."""
    p, q = rng.uniform(*p_range, size=2)
    alpha, nu = rng.uniform(*exp_range, size=2)
    beta = rng.uniform(-1.0, 1.0)
    base = DeformationParams(p=p, q=q, alpha=alpha, beta=beta, nu=nu, gamma=0.0)
    iv = admissible_gamma(base)
    hi = min(iv.upper, TWO_GAMMA_CAP)
    two_gamma = rng.uniform(iv.lower + margin, hi - margin)
    return base.with_(gamma=0.5 * two_gamma)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@st.composite
def admissible_params(draw, exp_max=2.0):
    p = draw(st.floats(0.5, 2.0))
    q = draw(st.floats(0.5, 2.0))
    alpha = draw(st.floats(-exp_max, exp_max))
    nu = draw(st.floats(-exp_max, exp_max))
    beta = draw(st.floats(-1.0, 1.0))
    base = DeformationParams(p=p, q=q, alpha=alpha, beta=beta, nu=nu, gamma=0.0)
    iv = admissible_gamma(base)
    hi = min(iv.upper, TWO_GAMMA_CAP)
    frac = draw(st.floats(0.001, 0.999))
    return base.with_(gamma=0.5 * (iv.lower + frac * (hi - iv.lower)))


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def isclose_rel(a, b, tol):
    return math.isfinite(a) and rel(a, b) <= tol
