"""Dimension-generic PT and CPT adjoints, inner products, and constraint checks.

Conventions: parity acts linearly through a matrix S (S^2 = 1), time
reversal antilinearly through a matrix Z combined with complex conjugation,
and the norm-flip operator C acts linearly through a matrix K (K^2 = 1).
The fermionic PT inner product is (phi, psi) = (S Z phi*)^T Z psi, which is
indefinite; the CPT inner product phi^dag S K psi is the positive-definite
repair of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, as_matrix, as_vector, dagger, max_abs


@dataclass(frozen=True)
class SymmetryData:
    """The (S, Z, K) triple for one representation dimension.

    ``k`` is optional because the nilpotent families exist before any
    Hamiltonian (and hence any norm-flip operator) is chosen.
    """

    s: np.ndarray
    z: np.ndarray
    k: np.ndarray | None = None

    def __post_init__(self):
        s = as_matrix(self.s)
        z = as_matrix(self.z)
        if s.shape != z.shape or s.shape[0] != s.shape[1]:
            raise ValueError("S and Z must be square matrices of equal dimension")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "z", z)
        if self.k is not None:
            k = as_matrix(self.k)
            if k.shape != s.shape:
                raise ValueError("K must match the dimension of S")
            object.__setattr__(self, "k", k)

    @property
    def dim(self) -> int:
        return int(self.s.shape[0])


def _check_dim(a: np.ndarray, sym: SymmetryData) -> None:
    if a.shape != (sym.dim, sym.dim):
        raise ValueError(f"operator shape {a.shape} does not match dimension {sym.dim}")


def pt_adjoint(a, sym: SymmetryData) -> np.ndarray:
    """PT adjoint S A^dag S."""
    am = as_matrix(a)
    _check_dim(am, sym)
    return sym.s @ dagger(am) @ sym.s


def cpt_adjoint(a, sym: SymmetryData) -> np.ndarray:
    """CPT adjoint K S A^dag S K (equivalently K A^PT K)."""
    if sym.k is None:
        raise ValueError("CPT adjoint requires the K matrix")
    am = as_matrix(a)
    _check_dim(am, sym)
    return sym.k @ sym.s @ dagger(am) @ sym.s @ sym.k


def pt_inner(phi, psi, sym: SymmetryData) -> complex:
    """Indefinite PT inner product (S Z phi*)^T Z psi.

    Linear in psi, antilinear in phi; conjugate symmetry is *not* implied.
    """
    p = as_vector(phi)
    q = as_vector(psi)
    if p.size != sym.dim or q.size != sym.dim:
        raise ValueError("vector length does not match the symmetry dimension")
    return complex((sym.s @ sym.z @ p.conj()) @ (sym.z @ q))


def cpt_inner(phi, psi, sym: SymmetryData) -> complex:
    """Positive-definite CPT inner product phi^dag S K psi."""
    if sym.k is None:
        raise ValueError("CPT inner product requires the K matrix")
    p = as_vector(phi)
    q = as_vector(psi)
    if p.size != sym.dim or q.size != sym.dim:
        raise ValueError("vector length does not match the symmetry dimension")
    return complex(p.conj() @ (sym.s @ sym.k @ q))


def is_nilpotent(a, tol: float = DEFAULT_TOL) -> bool:
    """True iff ||A^2|| <= tol * max(1, ||A||^2) in the max-entry norm."""
    am = as_matrix(a)
    if am.shape[0] != am.shape[1]:
        raise ValueError("nilpotency check needs a square matrix")
    return max_abs(am @ am) <= tol * max(1.0, max_abs(am) ** 2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass(frozen=True)
class SymmetryReport:
    """Per-constraint residuals for one (S, Z, K) triple."""

    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def residuals(self) -> dict[str, float]:
        return {c.name: c.residual for c in self.checks}


def validate_symmetry(sym: SymmetryData, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Check S^2 = 1, S Z = Z S*, and (when K is present) K^2 = 1 and
    K S Z = S Z K*.  Failures are report entries, never exceptions."""
    eye = np.eye(sym.dim)
    checks = [
        CheckResult("parity_squares_to_identity", max_abs(sym.s @ sym.s - eye), tol),
        CheckResult(
            "parity_commutes_with_time_reversal",
            max_abs(sym.s @ sym.z - sym.z @ sym.s.conj()),
            tol,
        ),
    ]
    if sym.k is not None:
        checks.append(
            CheckResult("c_squares_to_identity", max_abs(sym.k @ sym.k - eye), tol)
        )
        checks.append(
            CheckResult(
                "c_commutes_with_pt",
                max_abs(sym.k @ sym.s @ sym.z - sym.s @ sym.z @ sym.k.conj()),
                tol,
            )
        )
    return SymmetryReport(tuple(checks))
