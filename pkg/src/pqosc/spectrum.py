"""Spectrum of H = (hbar w / 2)(a a^+ + a^+ a), i.e. e_n = (hbar w / 2)(f(n) + f(n+1)).

The log parametrization p = e^tau, q = e^rho, tau nu = k + mu,
rho alpha = k - mu splits the growth rate k from the asymmetry mu; mu = 0
is the degenerate regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

from .errors import PositivityError
from .params import TOL_REGIME, DeformationParams, classify_regime
from .structure import f_closed

TOL_MU = 1e-6


@dataclass(frozen=True)
class SpectrumConfig:
    params: DeformationParams
    hbar_omega: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.hbar_omega) and self.hbar_omega > 0):
            raise ValueError(f"hbar_omega must be positive, got {self.hbar_omega!r}")


@dataclass(frozen=True)
class SpectrumParams:
    tau: float
    rho: float
    k: float
    mu: float

    def to_dict(self) -> dict:
        return {"tau": self.tau, "rho": self.rho, "k": self.k, "mu": self.mu}


def reparametrize(params: DeformationParams) -> SpectrumParams:
    tau, rho = math.log(params.p), math.log(params.q)
    a, b = tau * params.nu, rho * params.alpha
    return SpectrumParams(tau=tau, rho=rho, k=0.5 * (a + b), mu=0.5 * (a - b))


def _f_checked(params, n, tol_regime):
    v = f_closed(params, n, tol_regime=tol_regime).value
    if v < 0:
        raise PositivityError(f"f({n}) = {v:.6g} < 0: spectrum undefined for this gamma", n)
    return v


def energy(cfg: SpectrumConfig, n: int, *, tol_regime: float = TOL_REGIME) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    p = cfg.params
    return 0.5 * cfg.hbar_omega * (_f_checked(p, n, tol_regime) + _f_checked(p, n + 1, tol_regime))


def energy_parametrized(
    sp: SpectrumParams,
    gamma: float,
    rho_beta: float,
    hbar_omega: float,
    n: int,
    *,
    tol_mu: float = TOL_MU,
) -> float:
    """e_n from (k, mu) by the odd/even closed forms, or the mu = 0 form."""
    k, mu = sp.k, sp.mu
    half = 0.5 * hbar_omega
    if abs(mu) <= tol_mu:
        return half * math.exp(rho_beta + k * n) * (
            (n + gamma) * (1.0 + math.exp(-k)) + gamma * (-1) ** (n & 1) * (1.0 - math.exp(-k)) + 1.0
        )
    up = 0.5 * (1.0 + math.exp(k + mu)) * math.exp((k + mu) * n)
    down_sinh = 0.5 * (1.0 + math.exp(k - mu)) * math.exp((k - mu) * n)
    down_cosh = 0.5 * (1.0 - math.exp(k - mu)) * math.exp((k - mu) * n)
    sh, ch = math.sinh(mu), math.cosh(mu)
    sign = 1.0 if n & 1 else -1.0
    body = (up - down_sinh) / sh + 2.0 * gamma * (up + sign * down_cosh) / ch
    return half * math.exp(rho_beta - k) * body


def spacing(cfg: SpectrumConfig, n: int, *, tol_mu: float = TOL_MU) -> float:
    """e_{2n+1} - e_{2n}.

    Uses the closed expression in sinh(mu); for |mu| <= tol_mu, where that
    expression loses accuracy, the energies are subtracted directly.
    """
    sp = reparametrize(cfg.params)
    if abs(sp.mu) <= tol_mu:
        return energy(cfg, 2 * n + 1) - energy(cfg, 2 * n)
    k, mu = sp.k, sp.mu
    g = cfg.params.gamma
    rho_beta = sp.rho * cfg.params.beta
    return (
        0.5
        * cfg.hbar_omega
        * math.exp(rho_beta + (2 * n - 1) * k)
        * (1.0 / math.sinh(mu) + 2.0 * g / math.cosh(mu))
        * (math.exp(2 * k) * math.sinh(2 * (n + 1) * mu) - math.sinh(2 * n * mu))
    )


def gamma_upper_from_mu(sp: SpectrumParams) -> float:
    """Upper end of the 2 gamma interval in (k, mu) form: -coth(mu) for mu < 0."""
    if sp.mu < 0:
        return -1.0 / math.tanh(sp.mu)
    return math.inf


@dataclass
class EnergyTable:
    spectrum_params: SpectrumParams
    n: List[int]
    e_n: List[float]
    e_n_parametrized: Optional[List[float]]
    # e_{n+1} - e_n
    spacing: List[float]
    regime: str

    def max_disagreement(self) -> float:
        if self.e_n_parametrized is None:
            return 0.0
        return max(abs(a - b) / max(1.0, abs(a)) for a, b in zip(self.e_n, self.e_n_parametrized))


def energy_table(
    cfg: SpectrumConfig, n_max: int, *, parametrized: bool = True, tol_mu: float = TOL_MU
) -> EnergyTable:
    """Energies e_0..e_n_max with level spacings.

    The spacing at even n comes from the closed formula when |mu| > tol_mu;
    otherwise it is the plain difference of neighbouring levels.
    """
    sp = reparametrize(cfg.params)
    ns = list(range(n_max + 1))
    e = [energy(cfg, n) for n in range(n_max + 2)]
    par = None
    if parametrized:
        rho_beta = sp.rho * cfg.params.beta
        par = [energy_parametrized(sp, cfg.params.gamma, rho_beta, cfg.hbar_omega, n, tol_mu=tol_mu) for n in ns]
    gaps = []
    for n in ns:
        if n % 2 == 0 and abs(sp.mu) > tol_mu:
            gaps.append(spacing(cfg, n // 2, tol_mu=tol_mu))
        else:
            gaps.append(e[n + 1] - e[n])
    regime = classify_regime(cfg.params).regime.value
    return EnergyTable(sp, ns, e[: n_max + 1], par, gaps, regime)
