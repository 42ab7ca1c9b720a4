"""Structure function f(n), its recurrence oracle, bracket numbers and their
generating function.

f is the eigenvalue of a^+ a on the n-th Fock vector. With P = p^nu and
Q = q^alpha,

    generic (P != Q):  f(n) = q^beta [ (P^n - Q^n)/(P - Q) + 2 gamma (P^n - (-1)^n Q^n)/(P + Q) ]
    degenerate:        f(n) = (n + 2 gamma [n odd]) q^((n-1) alpha + beta)

and both satisfy f(0) = 0, f(n+1) = P f(n) + (1 + 2 gamma (-1)^n) q^(alpha n + beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, OutOfRangeError
from .params import TOL_REGIME, DeformationParams, Regime, classify_regime

# exp() overflows just above 709.78
LOG_MAX = math.log(np.finfo(float).max)
# Beyond this, powers are formed relative to the dominant exponent.
LOG_DIRECT = 700.0


@dataclass(frozen=True)
class StructureValue:
    n: int
    value: float
    branch: Regime
    log_scaled: Optional[float] = None  # ln|value|, filled in on request


@dataclass(frozen=True)
class BracketValue:
    n: int
    kappa: int
    value: float


def _check_n(n, lowest=0):
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < lowest:
        raise DomainError(f"n must be >= {lowest}, got {n}")
    return n


def _check_kappa(kappa):
    if kappa not in (1, -1):
        raise DomainError(f"kappa must be +1 or -1, got {kappa!r}")
    return int(kappa)


def _odd(n):
    return n & 1


def _signed_log(x):
    if x == 0:
        return 0, -math.inf
    return (1 if x > 0 else -1), math.log(abs(x))


def _log_abs_expm1(x):
    if x > 50.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(abs(math.expm1(x)))


def _logaddexp(a, b):
    hi, lo = max(a, b), min(a, b)
    return hi + math.log1p(math.exp(lo - hi))


def _generic_logs(lp, lq, n):
    """Signed logs of A_n = (P^n - Q^n)/(P - Q) and G_n = (P^n - (-1)^n Q^n)/(P + Q)."""
    d = lp - lq
    log_sum = _logaddexp(lp, lq)
    la = (n - 1) * lq + _log_abs_expm1(n * d) - _log_abs_expm1(d)
    if _odd(n):
        g = (1, _logaddexp(n * lp, n * lq) - log_sum)
    else:
        g = (1 if d > 0 else -1, n * lq + _log_abs_expm1(n * d) - log_sum)
    return (1, la), g


def _add_logs(x, y):
    """Signed-log sum of two signed-log values."""
    (sx, lx), (sy, ly) = x, y
    if sx == 0:
        return y
    if sy == 0:
        return x
    big = max(lx, ly)
    return _signed_log_shift(sx * math.exp(lx - big) + sy * math.exp(ly - big), big)


def _signed_log_shift(v, shift):
    sign, log_abs = _signed_log(v)
    return sign, log_abs + shift


def signed_log_f_generic(params: DeformationParams, n: int):
    """(sign, ln|f(n)|) from the generic closed form, without overflow."""
    n = _check_n(n)
    if n == 0:
        return 0, -math.inf
    (sa, la), (sg, lg) = _generic_logs(params.log_p_nu, params.log_q_alpha, n)
    g2 = 2.0 * params.gamma
    sg2, lg2 = _signed_log(g2)
    sign, log_abs = _add_logs((sa, la), (sg * sg2, lg + lg2))
    return sign, log_abs + params.beta * math.log(params.q)


def signed_log_f_degenerate(params: DeformationParams, n: int):
    """(sign, ln|f(n)|) from the degenerate closed form, without overflow."""
    n = _check_n(n)
    if n == 0:
        return 0, -math.inf
    sign, log_abs = _signed_log(n + 2.0 * params.gamma * _odd(n))
    return sign, log_abs + ((n - 1) * params.alpha + params.beta) * math.log(params.q)


def _from_log(sign, log_abs, n):
    if log_abs > LOG_MAX:
        raise OutOfRangeError(
            f"f({n}) overflows double precision (ln|f| = {log_abs:.6g})", log_abs, sign
        )
    return sign * math.exp(log_abs) if sign else 0.0


# below this |ln(P/Q)| the differences P^n - Q^n go through expm1
SMALL_LOG_RATIO = 0.1


def _generic_parts(params, n):
    """A_n = (P^n - Q^n)/(P - Q) and G_n = (P^n - (-1)^n Q^n)/(P + Q), directly."""
    P, Q = params.p_nu, params.q_alpha
    Pn, Qn = params.p ** (n * params.nu), params.q ** (n * params.alpha)
    d = params.log_p_nu - params.log_q_alpha
    if abs(d) < SMALL_LOG_RATIO:
        ratio = math.expm1(n * d) / math.expm1(d)
        A = params.q ** ((n - 1) * params.alpha) * ratio
        even = Qn * math.expm1(n * d) / (P + Q)
    else:
        A = (Pn - Qn) / (P - Q)
        even = (Pn - Qn) / (P + Q)
    G = (Pn + Qn) / (P + Q) if _odd(n) else even
    return A, G


def f_generic(params: DeformationParams, n: int) -> float:
    """Generic-branch closed form, evaluated whatever the regime."""
    n = _check_n(n)
    if n == 0:
        return 0.0
    lp, lq = params.log_p_nu, params.log_q_alpha
    if max(abs(n * lp), abs(n * lq), abs(params.beta * math.log(params.q))) > LOG_DIRECT:
        return _from_log(*signed_log_f_generic(params, n), n)
    A, G = _generic_parts(params, n)
    return params.q**params.beta * (A + 2.0 * params.gamma * G)


def f_degenerate(params: DeformationParams, n: int) -> float:
    """Degenerate-branch closed form, evaluated whatever the regime."""
    n = _check_n(n)
    if n == 0:
        return 0.0
    expo = ((n - 1) * params.alpha + params.beta) * math.log(params.q)
    if abs(expo) > LOG_DIRECT:
        return _from_log(*signed_log_f_degenerate(params, n), n)
    return (n + 2.0 * params.gamma * _odd(n)) * params.q ** ((n - 1) * params.alpha + params.beta)


def f_closed(
    params: DeformationParams,
    n: int,
    *,
    tol_regime: float = TOL_REGIME,
    with_log: bool = False,
) -> StructureValue:
    """Evaluate f(n), choosing the branch from the regime test.

    Inside the degenerate tolerance band the generic formula is never used.
    Raises `OutOfRangeError` (carrying ln|f|) if the value overflows.
    """
    n = _check_n(n)
    info = classify_regime(params, tol_regime)
    if info.degenerate:
        value = f_degenerate(params, n)
    else:
        value = f_generic(params, n)
    log_scaled = None
    if with_log:
        log_scaled = math.log(abs(value)) if value else -math.inf
    return StructureValue(n=n, value=value, branch=info.regime, log_scaled=log_scaled)


def signed_log_f(params: DeformationParams, n: int, *, tol_regime: float = TOL_REGIME):
    """Sign and ln|f(n)| for arbitrarily large n.

    Values that fit in a double come from `f_closed`, so signs agree with it
    exactly (f(1) = 0 at 2 gamma = -1 stays 0).
    """
    try:
        value = f_closed(params, n, tol_regime=tol_regime).value
    except OutOfRangeError as exc:
        return exc.sign, exc.log_abs
    return _signed_log(value)


def f_recurrence(params: DeformationParams, n: int) -> float:
    """f(n) by iterating f(k+1) = p^nu f(k) + (1 + 2 gamma (-1)^k) q^(alpha k + beta).

    This is the oracle for `f_closed`; it never touches the closed forms.
    The running value is kept as ``v * exp(shift)`` so intermediate steps
    cannot overflow.
    """
    n = _check_n(n)
    P = params.p**params.nu
    ln_q = math.log(params.q)
    v, shift = 0.0, 0.0
    for k in range(n):
        drive = 1.0 + 2.0 * params.gamma * (-1.0 if _odd(k) else 1.0)
        expo = params.alpha * k + params.beta
        if shift == 0.0 and abs(expo * ln_q) < LOG_DIRECT:
            term = params.q**expo
        else:
            term = math.exp(expo * ln_q - shift)
        v = P * v + drive * term
        if v != 0 and abs(v) > 1e200:
            shift += math.log(abs(v))
            v = math.copysign(1.0, v)
    if v == 0 or shift == 0.0:
        return v
    return _from_log(1 if v > 0 else -1, math.log(abs(v)) + shift, n)


def bracket(
    params: DeformationParams, n: int, kappa: int, *, tol_regime: float = TOL_REGIME
) -> BracketValue:
    """The number [n; alpha, beta, nu; gamma K] with K replaced by its eigenvalue.

    kappa is the K eigenvalue on the vector the bracket acts on, i.e. the
    vector to its right in a (a^+)^n - p^(n nu) (a^+)^n a = [n](a^+)^(n-1) q^(alpha N + beta).
    """
    n = _check_n(n, lowest=1)
    kappa = _check_kappa(kappa)
    g = params.gamma
    if classify_regime(params, tol_regime).degenerate:
        ln_base = params.alpha * (n - 1) * math.log(params.q)
        if ln_base > LOG_MAX:
            raise OutOfRangeError(f"bracket({n}) overflows", ln_base, 1)
        base = math.exp(ln_base)
        return BracketValue(n, kappa, n * base + 2.0 * g * kappa * base * _odd(n))
    lp, lq = params.log_p_nu, params.log_q_alpha
    if max(n * lp, n * lq) > LOG_DIRECT:
        raise OutOfRangeError(f"bracket({n}) overflows", max(n * lp, n * lq), 0)
    A, G = _generic_parts(params, n)
    # (Q^n - (-1)^n P^n)/(P + Q) = (-1)^(n-1) G_n
    sgn = 1.0 if _odd(n) else -1.0
    return BracketValue(n, kappa, A + 2.0 * g * kappa * sgn * G)


def genfunc_coeffs(
    params: DeformationParams, kappa: int, order: int, *, tol_regime: float = TOL_REGIME
) -> np.ndarray:
    """Series coefficients c_0..c_order of the generating function of the brackets.

    generic:     z/(1 - Q z) * (1/(1 - P z) + 2 gamma kappa/(1 + P z))
    degenerate:  z * (1/(1 - Q z)^2 + 2 gamma kappa/(1 - Q^2 z^2))

    Each factor is expanded as a geometric series and the products are
    formed by convolution; 1/(1 - Q^2 z^2) is taken as 1/(1 - Q z) * 1/(1 + Q z).
    """
    order = _check_n(order, lowest=1)
    kappa = _check_kappa(kappa)
    Q = params.q_alpha
    P = Q if classify_regime(params, tol_regime).degenerate else params.p_nu
    j = np.arange(order)
    geo_q = Q**j
    geo_p = P**j
    alt_p = (-P) ** j
    body = np.convolve(geo_q, geo_p)[:order] + 2.0 * params.gamma * kappa * np.convolve(geo_q, alt_p)[:order]
    if not np.all(np.isfinite(body)):
        raise OutOfRangeError("generating-function coefficients overflow", math.inf, 0)
    return np.concatenate(([0.0], body))
