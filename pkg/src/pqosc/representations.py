"""Classification of irreducible representations and their matrix realizations.

A representation is built on vectors psi_n with

    a^+ psi_n = sqrt(lambda_{n+1}) psi_{n+1},   a psi_n = sqrt(lambda_n) psi_{n-1},
    N psi_n = (nu0 + n) psi_n,                  K psi_n = c0 (-1)^n psi_n,

and the defining relation forces

    lambda_{n+1} = p^nu lambda_n + C (1 + (-1)^n B) q^(alpha n),
    C = q^(alpha nu0 + beta),  B = 2 gamma c0.

Which irreducible representations exist is decided by the sign of
nu ln p - alpha ln q and by where B sits relative to -1 and
u = (p^nu + q^alpha)/(p^nu - q^alpha).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, InvalidParamsError, MissingParameterError, NoRepresentationError
from .fock import OperatorQuadruple, from_weights
from .params import TOL_REGIME, DeformationParams, Sign, classify_regime

TOL_CLASSIFY = 1e-10
# lambda values this far below zero (relative) are rounding, and are clipped
TOL_NEGATIVE = 1e-12


class RepClass(str, enum.Enum):
    FOCK_LOWEST_WEIGHT = "FockLowestWeight"
    ONE_DIMENSIONAL = "OneDimensional"
    TWO_DIMENSIONAL = "TwoDimensional"
    HIGHEST_WEIGHT = "HighestWeight"
    TWO_SIDED_INFINITE = "TwoSidedInfinite"


class CaseTag(str, enum.Enum):
    A = "A"
    B1 = "B1"
    B2 = "B2"
    B3a = "B3a"
    B3b = "B3b"
    B3c = "B3c"


@dataclass(frozen=True)
class RepParams:
    """Data of the starting vector psi_0.

    ``c0`` is the K eigenvalue on psi_0 (w exp(-i pi nu0), real), and
    ``B = 2 gamma c0``. ``lambda0`` is the a^+ a eigenvalue on psi_0, only
    needed when both 1/(p^nu - q^alpha) +- B/(p^nu + q^alpha) are <= 0.
    """

    nu0: float
    c0: float
    B: float
    lambda0: Optional[float] = None

    def __post_init__(self):
        for name in ("nu0", "c0", "B"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParamsError(f"{name} must be finite")
        if self.lambda0 is not None and not self.lambda0 >= 0:
            raise InvalidParamsError(f"lambda0 must be >= 0, got {self.lambda0!r}")

    @classmethod
    def make(cls, params: DeformationParams, nu0: float = 0.0, c0: float = 1.0, lambda0=None):
        return cls(nu0=float(nu0), c0=float(c0), B=2.0 * params.gamma * float(c0), lambda0=lambda0)

    @property
    def w(self) -> complex:
        """Eigenvalue of C2 = K exp(i pi N)."""
        return self.c0 * np.exp(1j * np.pi * self.nu0)


@dataclass(frozen=True)
class Support:
    """Index range of the basis vectors psi_n; None means unbounded."""

    lo: Optional[int]
    hi: Optional[int]

    def __contains__(self, n: int) -> bool:
        return (self.lo is None or n >= self.lo) and (self.hi is None or n <= self.hi)

    @property
    def size(self) -> Optional[int]:
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo + 1

    def describe(self) -> str:
        if self.lo is None and self.hi is None:
            return "Z"
        if self.hi is None:
            return f"n >= {self.lo}"
        if self.lo is None:
            return f"n <= {self.hi}"
        return "{" + ", ".join(str(k) for k in range(self.lo, self.hi + 1)) + "}"


_SUPPORT_OF = {
    RepClass.FOCK_LOWEST_WEIGHT: Support(0, None),
    RepClass.HIGHEST_WEIGHT: Support(None, 0),
    RepClass.TWO_SIDED_INFINITE: Support(None, None),
    RepClass.ONE_DIMENSIONAL: Support(0, 0),
}


@dataclass(frozen=True)
class RepresentationDescriptor:
    kind: RepClass
    case_tag: CaseTag
    support: Support
    params: DeformationParams
    rep: RepParams
    # distance of B (or S) to the boundary value it was matched to
    boundary_distance: Optional[float] = None
    flags: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        size = self.support.size
        if self.kind is RepClass.ONE_DIMENSIONAL and size != 1:
            raise ValueError("one-dimensional class needs a one-point support")
        if self.kind is RepClass.TWO_DIMENSIONAL and size != 2:
            raise ValueError("two-dimensional class needs a two-point support")

    @property
    def lambda_domain(self) -> Support:
        """Indices where lambda_n is meaningful: the support plus hi + 1.

        lambda_{hi+1} (= 0 at a finite top) is the weight of a^+ on psi_hi.
        """
        s = self.support
        return Support(s.lo, None if s.hi is None else s.hi + 1)

    def to_dict(self) -> dict:
        return {
            "class": self.kind.value,
            "case_tag": self.case_tag.value,
            "support": self.support.describe(),
            "B": self.rep.B,
            "c0": self.rep.c0,
            "nu0": self.rep.nu0,
            "lambda0": self.rep.lambda0,
            "boundary_distance": self.boundary_distance,
            "flags": list(self.flags),
        }


def _close(x, target, tol):
    return abs(x - target) <= tol * max(1.0, abs(target))


def _coefficients(params: DeformationParams):
    P, Q = params.p_nu, params.q_alpha
    return P, Q, P - Q, P + Q


def _C(params, rep):
    return params.q ** (params.alpha * rep.nu0 + params.beta)


def s_value(params: DeformationParams, rep: RepParams) -> float:
    """lambda0 q^-(alpha nu0 + beta) + 1/(p^nu - q^alpha) + B/(p^nu + q^alpha)."""
    if rep.lambda0 is None:
        raise MissingParameterError("lambda0 is required for this parameter range")
    _, _, d, s = _coefficients(params)
    return rep.lambda0 / _C(params, rep) + 1.0 / d + rep.B / s


def classify_representation(
    params: DeformationParams,
    rep: RepParams,
    *,
    tol: float = TOL_CLASSIFY,
    tol_regime: float = TOL_REGIME,
) -> RepresentationDescriptor:
    """Place (params, rep) in one of the cases A, B1, B2, B3a, B3b, B3c.

    Equalities on B and on S are decided with relative tolerance `tol`; when
    a boundary value is matched, B (and c0) are snapped to it and the
    distance is kept in ``boundary_distance``.
    """
    if not _close(rep.B, 2.0 * params.gamma * rep.c0, 1e-12):
        raise InvalidParamsError(f"B = {rep.B!r} does not equal 2 gamma c0 = {2 * params.gamma * rep.c0!r}")
    info = classify_regime(params, tol_regime)
    B = rep.B
    flags = []

    def snap(target):
        if params.gamma == 0:
            return rep
        return replace(rep, B=target, c0=target / (2.0 * params.gamma))

    def make(kind, tag, r=rep, dist=None, support=None):
        return RepresentationDescriptor(
            kind=kind,
            case_tag=tag,
            support=support or _SUPPORT_OF[kind],
            params=params,
            rep=r,
            boundary_distance=dist,
            flags=tuple(flags),
        )

    def ignore_lambda0():
        if rep.lambda0 is not None and rep.lambda0 != 0:
            flags.append("lambda0 ignored: the extremal vector is renumbered to psi_0")

    if info.degenerate:
        if B < -1.0 and not _close(B, -1.0, tol):
            raise NoRepresentationError(f"case A: lambda_1 >= 0 needs B >= -1, got B = {B!r}")
        ignore_lambda0()
        if B < 0:
            flags.append("B outside the B >= 0 range quoted for case A")
        if _close(B, -1.0, tol):
            return make(RepClass.ONE_DIMENSIONAL, CaseTag.A, snap(-1.0), abs(B + 1.0))
        return make(RepClass.FOCK_LOWEST_WEIGHT, CaseTag.A)

    if info.sign is Sign.POSITIVE:
        ignore_lambda0()
        if _close(B, -1.0, tol):
            return make(RepClass.ONE_DIMENSIONAL, CaseTag.B1, snap(-1.0), abs(B + 1.0))
        if B > -1.0:
            return make(RepClass.FOCK_LOWEST_WEIGHT, CaseTag.B1)
        raise NoRepresentationError(f"case B1: lambda_n >= 0 needs B >= -1, got B = {B!r}")

    # nu ln p < alpha ln q: d < 0 and u < -1
    _, _, d, s = _coefficients(params)
    u = s / d
    plus, minus = 1.0 / d + B / s, 1.0 / d - B / s

    def s_close_to_zero(S):
        scale = max(abs(1.0 / d), abs(B / s), rep.lambda0 / _C(params, rep))
        return abs(S) <= tol * scale

    two_down = Support(-1, 0)
    two_up = Support(0, 1)

    if _close(B, u, tol):
        dist = abs(B - u)
        if rep.lambda0 is None:
            return make(RepClass.TWO_DIMENSIONAL, CaseTag.B2, snap(u), dist, two_down)
        S = s_value(params, rep)
        if s_close_to_zero(S):
            return make(RepClass.TWO_DIMENSIONAL, CaseTag.B3b, snap(u), dist, two_down)
        if S > 0:
            return make(RepClass.TWO_SIDED_INFINITE, CaseTag.B3a)
        raise NoRepresentationError(
            "B = (p^nu+q^alpha)/(p^nu-q^alpha) with S < 0: lambda_n < 0 for some n (B >= -1 violated)"
        )

    if _close(B, -u, tol):
        dist = abs(B + u)
        S = s_value(params, rep)
        if s_close_to_zero(S):
            return make(RepClass.TWO_DIMENSIONAL, CaseTag.B3b, snap(-u), dist, two_up)
        return make(RepClass.TWO_SIDED_INFINITE, CaseTag.B3a)

    if max(plus, minus) > 0:
        ignore_lambda0()
        if B < u:
            return make(RepClass.HIGHEST_WEIGHT, CaseTag.B2)
        raise NoRepresentationError(
            f"case B2: lambda_0 >= 0 needs B <= -1, and positivity needs B <= {u!r}; got B = {B!r}"
        )

    S = s_value(params, rep)
    if s_close_to_zero(S):
        return make(RepClass.TWO_SIDED_INFINITE, CaseTag.B3b, dist=abs(S))
    if S > 0:
        return make(RepClass.TWO_SIDED_INFINITE, CaseTag.B3a)
    if _close(B, -1.0, tol):
        return make(RepClass.ONE_DIMENSIONAL, CaseTag.B3c, snap(-1.0), abs(B + 1.0))
    if B > -1.0:
        return make(RepClass.FOCK_LOWEST_WEIGHT, CaseTag.B3c)
    raise NoRepresentationError(f"case B3c: lambda_n >= 0 needs -1 <= B < {-u!r}; got B = {B!r}")


def lambda_recurrence_oracle(params: DeformationParams, rep: RepParams, lambda_n: float, n: int) -> float:
    """lambda_{n+1} from lambda_n by the defining relation."""
    return params.p_nu * lambda_n + _C(params, rep) * (1.0 + (-1) ** (n & 1) * rep.B) * params.q ** (
        params.alpha * n
    )


def _lambda(desc: RepresentationDescriptor, n: int) -> float:
    params, rep = desc.params, desc.rep
    P, Q, d, s = _coefficients(params)
    C = _C(params, rep)
    B = rep.B
    sgn = -1.0 if n & 1 else 1.0
    odd = n & 1
    kind, tag = desc.kind, desc.case_tag

    if kind is RepClass.ONE_DIMENSIONAL:
        return 0.0
    if kind is RepClass.TWO_DIMENSIONAL:
        nonzero_parity = 0 if desc.support.lo == -1 else 1
        if odd != nonzero_parity or n not in (desc.support.lo, desc.support.hi):
            return 0.0
        return 2.0 * params.q ** (params.alpha * (rep.nu0 + n) + params.beta) / (Q - P)
    if tag is CaseTag.A:
        return params.q ** (params.alpha * (rep.nu0 + n - 1) + params.beta) * (n + B * odd)
    Pn, Qn = params.p ** (n * params.nu), params.q ** (n * params.alpha)
    if kind is RepClass.FOCK_LOWEST_WEIGHT:
        return C * ((Pn - Qn) / d + B * (Pn - sgn * Qn) / s)
    if kind is RepClass.HIGHEST_WEIGHT:
        if n == 1:
            return 0.0
        return C * (-(params.p ** ((n - 1) * params.nu)) * (1.0 + B) + (Pn - Qn) / d + B * (Pn - sgn * Qn) / s)
    if tag is CaseTag.B3b:
        return -C * Qn * (1.0 / d + B * sgn / s)
    # B3a
    return Pn * rep.lambda0 + C * (Pn * (1.0 / d + B / s) - Qn * (1.0 / d + B * sgn / s))


def lambda_sequence(desc: RepresentationDescriptor, n_lo: int, n_hi: int) -> np.ndarray:
    """lambda_n for n_lo <= n <= n_hi, from the closed form of the case."""
    if n_hi < n_lo:
        raise DomainError(f"empty index range [{n_lo}, {n_hi}]")
    dom = desc.lambda_domain
    for n in (n_lo, n_hi):
        if n not in dom:
            raise DomainError(f"index {n} outside {dom.describe()} for class {desc.kind.value}")
    return np.array([_lambda(desc, n) for n in range(n_lo, n_hi + 1)])


def default_window(desc: RepresentationDescriptor, width: int = 16) -> Tuple[int, int]:
    s = desc.support
    if s.size is not None:
        return s.lo, s.hi
    if s.hi is None and s.lo is not None:
        return s.lo, s.lo + width - 1
    if s.lo is None and s.hi is not None:
        return s.hi - width + 1, s.hi
    half = width // 2
    return -half, width - half - 1


def build_rep_matrices(desc: RepresentationDescriptor, window: Optional[Tuple[int, int]] = None) -> OperatorQuadruple:
    """Matrices of a, a^+, N, K on {psi_n : lo <= n <= hi}.

    Columns at a true boundary of the support are exact; the others suffer
    the usual truncation and are excluded by the relation checks.
    """
    params, rep = desc.params, desc.rep
    if desc.kind is RepClass.ONE_DIMENSIONAL:
        if params.gamma == 0:
            raise InvalidParamsError("one-dimensional representation has K = -1/(2 gamma), undefined at gamma = 0")
        return from_weights([0.0], [rep.nu0], [-1.0 / (2.0 * params.gamma)], labels=[0], exact_lo=True, exact_hi=True)
    lo, hi = window if window is not None else default_window(desc)
    if hi < lo:
        raise DomainError(f"empty window [{lo}, {hi}]")
    for n in (lo, hi):
        if n not in desc.support:
            raise DomainError(f"window index {n} outside support {desc.support.describe()}")
    lam = lambda_sequence(desc, lo, hi)
    scale = max(1.0, float(np.max(np.abs(lam))))
    lam = np.where((lam < 0) & (lam >= -TOL_NEGATIVE * scale), 0.0, lam)
    n = np.arange(lo, hi + 1)
    return from_weights(
        lam,
        rep.nu0 + n,
        rep.c0 * (-1.0) ** n,
        labels=n,
        exact_lo=desc.support.lo == lo,
        exact_hi=desc.support.hi == hi,
    )
