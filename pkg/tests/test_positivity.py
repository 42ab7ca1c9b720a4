import math

import pytest
from hypothesis import given

from pqosc.params import DeformationParams, Sign, classify_regime
from pqosc.positivity import admissible_gamma, check_positivity, monotone_bound

from conftest import admissible_params, draw_admissible

NEG = DeformationParams(p=2, q=3, alpha=1, nu=1, beta=0, gamma=0)


@pytest.mark.parametrize(
    "params, lower, upper",
    [
        (DeformationParams(p=3, q=2, alpha=1, nu=1), -1.0, math.inf),
        (NEG, -1.0, 5.0),
        (DeformationParams(p=4, q=2, alpha=2, nu=1), -1.0, math.inf),
    ],
)
def test_interval_examples(params, lower, upper):
    iv = admissible_gamma(params)
    assert iv.lower == lower
    assert iv.upper == pytest.approx(upper, rel=1e-15)


def test_scan_undeformed_gamma_zero():
    rep = check_positivity(NEG, 30)
    assert rep.verdict == "PositiveOnScan"
    assert rep.empirical_min == 1.0 and rep.n_argmin == 1
    assert rep.regime_sign is Sign.NEGATIVE


def test_zero_at_lower_end_is_a_violation():
    rep = check_positivity(NEG.with_(gamma=-0.5), 30)
    assert rep.verdict == "ViolationAt(1)"
    assert rep.zero_violation
    assert not rep.inside_interval


def test_above_upper_end_fails_at_even_n():
    rep = check_positivity(NEG.with_(gamma=2.6), 30)
    assert rep.violation_at is not None and rep.violation_at % 2 == 0
    assert not rep.zero_violation


def test_n_max_must_be_positive():
    with pytest.raises(ValueError):
        check_positivity(NEG, 0)


def test_draws_inside_interval_are_positive(rng):
    for _ in range(100):
        params = draw_admissible(rng)
        rep = check_positivity(params, 40)
        assert rep.positive, params
        assert rep.inside_interval


def test_draws_outside_interval_fail_in_negative_regime(rng):
    seen = 0
    while seen < 50:
        params = draw_admissible(rng)
        if classify_regime(params).sign is not Sign.NEGATIVE:
            continue
        seen += 1
        iv = admissible_gamma(params)
        for two_gamma in (iv.lower - 1e-3, iv.upper + 1e-3):
            rep = check_positivity(params.with_(gamma=0.5 * two_gamma), 40)
            assert not rep.positive, (params, two_gamma)


@given(admissible_params())
def test_monotone_bound(params):
    info = classify_regime(params)
    if info.degenerate:
        return
    P, Q = params.p_nu, params.q_alpha
    u = (P + Q) / (P - Q)
    prev = 1.0
    for n in range(1, 41):
        un = monotone_bound(params, n)
        assert un >= prev - 1e-12
        assert un >= 1.0 - 1e-12
        if n <= 10:
            assert un == pytest.approx(u * (P**n - Q**n) / (P**n + Q**n), rel=1e-9)
        prev = un


def test_scan_past_overflow():
    params = DeformationParams(p=3, q=2, alpha=1, nu=1, gamma=0.1)
    rep = check_positivity(params, 1000)
    assert rep.positive
    assert rep.n_argmin == 1
    rep = check_positivity(params.with_(gamma=-0.6), 1000)
    assert rep.violation_at == 1
