"""Truncated matrix realizations of a, a^+, N, K and numerical checks of the
defining relations, the bracket identity and the Casimir operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np

from .errors import DomainError, PositivityError
from .params import TOL_REGIME, DeformationParams
from .structure import bracket, f_closed

DEFAULT_TOL = 1e-10

RELATIONS = ("R1", "R2", "R3", "R4", "R5", "R6")


@dataclass(frozen=True)
class OperatorQuadruple:
    """Matrices of a, a^+, N, K on a finite window of basis vectors.

    Column j is the j-th basis vector of the window; ``labels`` holds the
    ladder index of each one (0..D-1 for the Fock space). ``exact_lo`` and
    ``exact_hi`` say whether the first/last column sits on a true boundary
    of the representation, in which case truncation does not spoil it.
    """

    dim: int
    a: np.ndarray
    adag: np.ndarray
    n_op: np.ndarray
    k_op: np.ndarray
    labels: np.ndarray = field(default=None)
    exact_lo: bool = True
    exact_hi: bool = False

    def __post_init__(self):
        if self.labels is None:
            object.__setattr__(self, "labels", np.arange(self.dim))
        for m in (self.a, self.adag, self.n_op, self.k_op):
            m.setflags(write=False)

    def checked_columns(self, degree: int = 1) -> slice:
        """Columns unaffected by the cutoff for a relation of the given degree."""
        lo = 0 if self.exact_lo else degree
        hi = self.dim if self.exact_hi else self.dim - degree
        return slice(lo, max(lo, hi))


@dataclass
class ResidualReport:
    residuals: Dict[str, float]
    checked_block: int
    tol: float
    # unscaled max |entry|, for reference
    abs_residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    def to_dict(self) -> dict:
        return {
            "residuals": dict(self.residuals),
            "abs_residuals": dict(self.abs_residuals),
            "checked_block": self.checked_block,
            "tol": self.tol,
            "pass": self.passed,
        }


def _ladder(weights: Sequence[float]) -> np.ndarray:
    """Matrix with sqrt(weights[j]) at (j-1, j); weights[0] is ignored."""
    w = np.asarray(weights, dtype=float)
    d = len(w)
    a = np.zeros((d, d), dtype=complex)
    if d > 1:
        a[np.arange(d - 1), np.arange(1, d)] = np.sqrt(w[1:])
    return a


def from_weights(
    weights: Sequence[float],
    n_diag: Sequence[float],
    k_diag: Sequence[complex],
    *,
    labels=None,
    exact_lo: bool = True,
    exact_hi: bool = False,
) -> OperatorQuadruple:
    """Assemble a realization from a^+ a eigenvalues and N, K diagonals.

    ``weights[j]`` is the eigenvalue lambda of a^+ a on column j, so that
    a e_j = sqrt(weights[j]) e_{j-1}.
    """
    w = np.asarray(weights, dtype=float)
    for j, x in enumerate(w):
        if x < 0:
            label = labels[j] if labels is not None else j
            raise PositivityError(f"negative a^+ a eigenvalue {x:.6g} at n={label}", int(label))
    a = _ladder(w)
    return OperatorQuadruple(
        dim=len(w),
        a=a,
        adag=a.conj().T.copy(),
        n_op=np.diag(np.asarray(n_diag, dtype=float)).astype(complex),
        k_op=np.diag(np.asarray(k_diag, dtype=complex)),
        labels=None if labels is None else np.asarray(labels),
        exact_lo=exact_lo,
        exact_hi=exact_hi,
    )


def build_fock(params: DeformationParams, D: int, *, tol_regime: float = TOL_REGIME) -> OperatorQuadruple:
    if D < 2:
        raise DomainError(f"dimension must be >= 2, got {D}")
    f = [f_closed(params, n, tol_regime=tol_regime).value for n in range(D)]
    n = np.arange(D)
    return from_weights(f, n, (-1.0) ** n)


def _scaled(terms, weights):
    """max |sum_i w_i T_i| / max(1, sum_i |w_i T_i|), entrywise, plus the raw max."""
    total = sum(w * t for w, t in zip(weights, terms))
    scale = np.maximum(1.0, sum(np.abs(w * t) for w, t in zip(weights, terms)))
    if total.size == 0:
        return 0.0, 0.0
    return float(np.max(np.abs(total) / scale)), float(np.max(np.abs(total)))


def q_power_diag(ops: OperatorQuadruple, params: DeformationParams) -> np.ndarray:
    """q^(alpha N + beta) as a diagonal matrix."""
    nvals = np.real(np.diag(ops.n_op))
    return np.diag(params.q ** (params.alpha * nvals + params.beta)).astype(complex)


def verify_relations(
    ops: OperatorQuadruple, params: DeformationParams, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Check the six defining relations on the columns untouched by truncation.

    R1  a a^+ - p^nu a^+ a - (I + 2 gamma K) q^(alpha N + beta)
    R2  [N, a] + a
    R3  [N, a^+] - a^+
    R4  K a + a K
    R5  K a^+ + a^+ K
    R6  [N, K]

    Each residual entry is divided by max(1, sum of the magnitudes of the
    terms that produced it), so entries of size 1e12 are held to the same
    relative standard as entries of size 1.
    """
    a, ad, N, K = ops.a, ops.adag, ops.n_op, ops.k_op
    cols = ops.checked_columns(1)
    qd = q_power_diag(ops, params)
    P = params.p**params.nu
    checks = {
        "R1": ([a @ ad, ad @ a, qd, K @ qd], [1.0, -P, -1.0, -2.0 * params.gamma]),
        "R2": ([N @ a, a @ N, a], [1.0, -1.0, 1.0]),
        "R3": ([N @ ad, ad @ N, ad], [1.0, -1.0, -1.0]),
        "R4": ([K @ a, a @ K], [1.0, 1.0]),
        "R5": ([K @ ad, ad @ K], [1.0, 1.0]),
        "R6": ([N @ K, K @ N], [1.0, -1.0]),
    }
    res, raw = {}, {}
    for name, (terms, weights) in checks.items():
        res[name], raw[name] = _scaled([t[:, cols] for t in terms], weights)
    return ResidualReport(res, cols.stop - cols.start, tol, raw)


def bracket_diag(ops: OperatorQuadruple, params: DeformationParams, n: int) -> np.ndarray:
    """[n; alpha, beta, nu; gamma K] as a diagonal matrix.

    Uses the K eigenvalue on each column; K must be +-1 there (Fock space).
    """
    kd = np.real(np.diag(ops.k_op))
    vals = [bracket(params, n, int(round(k))).value for k in kd]
    return np.diag(vals).astype(complex)


def verify_bracket_identity(
    ops: OperatorQuadruple, params: DeformationParams, n: int, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Check a (a^+)^n - p^(n nu) (a^+)^n a = [n](a^+)^(n-1) q^(alpha N + beta)."""
    if not 1 <= n <= ops.dim - 2:
        raise DomainError(f"bracket degree must lie in 1..{ops.dim - 2}, got {n}")
    a, ad = ops.a, ops.adag
    adn = np.linalg.matrix_power(ad, n)
    adn1 = np.linalg.matrix_power(ad, n - 1)
    lhs1 = a @ adn
    lhs2 = adn @ a
    rhs = bracket_diag(ops, params, n) @ adn1 @ q_power_diag(ops, params)
    cols = slice(0, ops.dim - n - 1)
    Pn = params.p ** (n * params.nu)
    name = f"bracket_n{n}"
    r, raw = _scaled([lhs1[:, cols], lhs2[:, cols], rhs[:, cols]], [1.0, -Pn, -1.0])
    return ResidualReport({name: r}, cols.stop, tol, {name: raw})


def _phase(x: np.ndarray, turns: int) -> np.ndarray:
    """exp(i pi turns x), exact (+-1) when turns*x is an integer."""
    r = np.mod(turns * np.asarray(x, dtype=float), 2.0)
    out = np.exp(1j * np.pi * r)
    out = np.where(r == 0.0, 1.0 + 0j, out)
    return np.where(r == 1.0, -1.0 + 0j, out)


def casimirs(ops: OperatorQuadruple):
    """C1 = K^2, C2 = K exp(i pi N), C3 = exp(2 i pi N) from the diagonals."""
    kd = np.diag(ops.k_op)
    nd = np.real(np.diag(ops.n_op))
    return np.diag(kd * kd), np.diag(kd * _phase(nd, 1)), np.diag(_phase(nd, 2))


def casimir_check(ops: OperatorQuadruple, tol: float = DEFAULT_TOL, w: Optional[complex] = 1.0) -> ResidualReport:
    """Commutators of C1, C2, C3 with a and a^+ (keys like ``C1_comm_a``), and
    |C2 - w I| (key ``C2_minus_wI``).

    Pass ``w=None`` to skip the scalar test on C2.
    """
    cols = ops.checked_columns(1)
    res, raw = {}, {}
    for name, C in zip(("C1", "C2", "C3"), casimirs(ops)):
        for opname, X in (("a", ops.a), ("adag", ops.adag)):
            key = f"{name}_comm_{opname}"
            res[key], raw[key] = _scaled([(C @ X)[:, cols], (X @ C)[:, cols]], [1.0, -1.0])
    if w is not None:
        C2 = casimirs(ops)[1]
        key = "C2_minus_wI"
        res[key], raw[key] = _scaled([C2, np.eye(ops.dim)], [1.0, -complex(w)])
    return ResidualReport(res, cols.stop - cols.start, tol, raw)
