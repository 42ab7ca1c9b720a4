"""Admissible gamma interval for f(n) > 0 and an empirical scan of f."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .params import TOL_REGIME, DeformationParams, Sign, classify_regime
from .structure import signed_log_f


@dataclass(frozen=True)
class GammaInterval:
    """Open interval ``(lower, upper)`` for 2*gamma."""

    lower: float
    upper: float

    def contains(self, two_gamma: float) -> bool:
        return self.lower < two_gamma < self.upper


@dataclass(frozen=True)
class PositivityReport:
    interval: GammaInterval
    regime_sign: Sign
    empirical_min: float
    n_argmin: int
    violation_at: Optional[int] = None
    # f(violation_at) == 0 exactly, as opposed to negative
    zero_violation: bool = False
    inside_interval: bool = True
    # ln|f| at the minimum when the value itself is not representable
    empirical_min_log: Optional[float] = None

    @property
    def verdict(self) -> str:
        if self.violation_at is None:
            return "PositiveOnScan"
        return f"ViolationAt({self.violation_at})"

    @property
    def positive(self) -> bool:
        return self.violation_at is None


def sign_ratio(params: DeformationParams) -> float:
    """u = (p^nu + q^alpha) / (p^nu - q^alpha)."""
    P, Q = params.p_nu, params.q_alpha
    return (P + Q) / (P - Q)


def admissible_gamma(params: DeformationParams, tol_regime: float = TOL_REGIME) -> GammaInterval:
    info = classify_regime(params, tol_regime)
    if info.sign is Sign.NEGATIVE:
        return GammaInterval(-1.0, -sign_ratio(params))
    # positive sign and degenerate regime: only 1 + 2 gamma > 0 is needed
    return GammaInterval(-1.0, math.inf)


def monotone_bound(params: DeformationParams, n: int) -> float:
    """u_n = u (P^n - Q^n)/(P^n + Q^n), i.e. tanh(n mu)/tanh(mu); u_1 = 1.

    f(n) > 0 for odd n is equivalent to u_n + 2 gamma > 0.
    """
    if n == 1:
        return 1.0
    # tanh form avoids overflow of P^n, Q^n
    half = 0.5 * (params.log_p_nu - params.log_q_alpha)
    return math.tanh(n * half) / math.tanh(half)


def check_positivity(
    params: DeformationParams, n_max: int, tol_regime: float = TOL_REGIME
) -> PositivityReport:
    """Scan f(1..n_max) and report the minimum and the first non-positive value.

    The scan compares signed logarithms, so it works for n where f itself
    overflows.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    info = classify_regime(params, tol_regime)
    interval = admissible_gamma(params, tol_regime)
    best = None  # (sign, log) of the smallest value so far
    n_best = 1
    violation, zero = None, False
    for n in range(1, n_max + 1):
        sign, log_abs = signed_log_f(params, n, tol_regime=tol_regime)
        if violation is None and sign <= 0:
            violation, zero = n, sign == 0
        if best is None or _less(sign, log_abs, *best):
            best, n_best = (sign, log_abs), n
    sign, log_abs = best
    if sign == 0:
        emin, emin_log = 0.0, None
    elif log_abs > 709.0:
        emin, emin_log = sign * math.inf, log_abs
    else:
        emin, emin_log = sign * math.exp(log_abs), None
    return PositivityReport(
        interval=interval,
        regime_sign=info.sign,
        empirical_min=emin,
        n_argmin=n_best,
        violation_at=violation,
        zero_violation=zero,
        inside_interval=interval.contains(2.0 * params.gamma),
        empirical_min_log=emin_log,
    )


def _less(sign_a, log_a, sign_b, log_b):
    if sign_a != sign_b:
        return sign_a < sign_b
    if sign_a > 0:
        return log_a < log_b
    if sign_a < 0:
        return log_a > log_b
    return False
