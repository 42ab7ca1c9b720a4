"""Deformation parameters, regime detection and presets for known deformations."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, replace

from .errors import InvalidBaseError, InvalidParamsError

TOL_REGIME = 1e-12

FIELDS = ("p", "q", "alpha", "beta", "nu", "gamma")


@dataclass(frozen=True)
class DeformationParams:
    """The six real parameters of the algebra

        a a^+ - p^nu a^+ a = (1 + 2 gamma K) q^(alpha N + beta).
    """

    p: float = 1.0
    q: float = 1.0
    alpha: float = 0.0
    beta: float = 0.0
    nu: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in FIELDS:
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise InvalidParamsError(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise InvalidParamsError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.p <= 0:
            raise InvalidParamsError(f"p must be positive, got {self.p!r}")
        if self.q <= 0:
            raise InvalidParamsError(f"q must be positive, got {self.q!r}")

    @property
    def p_nu(self) -> float:
        return self.p**self.nu

    @property
    def q_alpha(self) -> float:
        return self.q**self.alpha

    @property
    def log_p_nu(self) -> float:
        return self.nu * math.log(self.p)

    @property
    def log_q_alpha(self) -> float:
        return self.alpha * math.log(self.q)

    def with_(self, **changes) -> "DeformationParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "DeformationParams":
        unknown = set(data) - set(FIELDS)
        if unknown:
            raise InvalidParamsError(f"unknown parameter keys: {sorted(unknown)}")
        return cls(**{k: data[k] for k in FIELDS if k in data})

    @classmethod
    def from_json(cls, text: str) -> "DeformationParams":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise InvalidParamsError("parameter JSON must be an object")
        return cls.from_dict(data)


class Regime(str, enum.Enum):
    GENERIC = "generic"
    DEGENERATE = "degenerate"


class Sign(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"


@dataclass(frozen=True)
class RegimeInfo:
    discriminant: float
    regime: Regime
    sign: Sign

    @property
    def degenerate(self) -> bool:
        return self.regime is Regime.DEGENERATE


def classify_regime(params: DeformationParams, tol_regime: float = TOL_REGIME) -> RegimeInfo:
    """Decide between p^nu != q^alpha (generic) and p^nu == q^alpha (degenerate).

    The test is on ``nu ln p - alpha ln q``, scaled by
    ``max(1, |nu ln p|, |alpha ln q|)`` before comparing with `tol_regime`.
    """
    if not tol_regime > 0:
        raise ValueError("tol_regime must be positive")
    lp, lq = params.log_p_nu, params.log_q_alpha
    disc = lp - lq
    scale = max(1.0, abs(lp), abs(lq))
    if abs(disc) <= tol_regime * scale:
        return RegimeInfo(disc, Regime.DEGENERATE, Sign.ZERO)
    return RegimeInfo(disc, Regime.GENERIC, Sign.POSITIVE if disc > 0 else Sign.NEGATIVE)


class PresetName(str, enum.Enum):
    UNDEFORMED = "undeformed"
    BURBAN = "burban"
    CHAKRABARTY_JAGANNATHAN = "chakrabarty-jagannathan"
    QUESNE = "quesne"


_BASE_COUNT = {
    PresetName.UNDEFORMED: 0,
    PresetName.BURBAN: 1,
    PresetName.CHAKRABARTY_JAGANNATHAN: 2,
    PresetName.QUESNE: 2,
}


@dataclass(frozen=True)
class DeformationPreset:
    """A known deformation and its own parameters.

    ``base`` is ``()`` for the undeformed oscillator, ``(q0,)`` for Burban's
    algebra and ``(p0, q0)`` for the two (p, q) algebras. Burban's algebra
    keeps ``nu, alpha, beta, gamma`` free; they are carried in ``extra``.
    """

    name: PresetName
    base: tuple = ()
    extra: dict | None = None

    def __post_init__(self):
        object.__setattr__(self, "name", PresetName(self.name))
        base = tuple(float(b) for b in self.base)
        object.__setattr__(self, "base", base)
        want = _BASE_COUNT[self.name]
        if len(base) != want:
            raise InvalidParamsError(
                f"preset {self.name.value} takes {want} base parameter(s), got {len(base)}"
            )
        for b in base:
            if not (math.isfinite(b) and b > 0):
                raise InvalidParamsError(f"preset base parameters must be positive, got {b!r}")


def from_preset(preset: DeformationPreset) -> DeformationParams:
    name = preset.name
    if name is PresetName.UNDEFORMED:
        return DeformationParams(p=1.0, q=1.0, alpha=0.0, beta=0.0, nu=0.0, gamma=0.0)
    if name is PresetName.BURBAN:
        (q0,) = preset.base
        extra = dict(preset.extra or {})
        bad = set(extra) - {"alpha", "beta", "nu", "gamma"}
        if bad:
            raise InvalidParamsError(f"burban preset cannot override {sorted(bad)}")
        return DeformationParams(p=q0, q=q0, **extra)
    p0, q0 = preset.base
    if name is PresetName.CHAKRABARTY_JAGANNATHAN:
        # f(n) = (p0^-n - q0^n) / (p0^-1 - q0)
        return DeformationParams(p=q0, q=p0, alpha=-1.0, beta=0.0, nu=1.0, gamma=0.0)
    # Quesne: f(n) = (p0^n - q0^-n) / (q0 - p0^-1)
    if q0 == 1.0:
        raise InvalidBaseError("quesne preset needs q0 != 1 (logarithm base)")
    beta = math.log(p0) / math.log(q0) - 1.0
    return DeformationParams(p=p0, q=q0, alpha=-1.0, beta=beta, nu=1.0, gamma=0.0)


def textbook_f(preset: DeformationPreset, n: int) -> float:
    """f(n) written in the preset's own variables, for cross-checks."""
    name = preset.name
    if name is PresetName.UNDEFORMED:
        return float(n)
    if name is PresetName.BURBAN:
        raise ValueError("burban preset has no separate textbook form; compare with the degenerate branch")
    p0, q0 = preset.base
    if name is PresetName.CHAKRABARTY_JAGANNATHAN:
        return (p0 ** (-n) - q0**n) / (p0 ** (-1) - q0)
    return (p0**n - q0 ** (-n)) / (q0 - p0 ** (-1))
