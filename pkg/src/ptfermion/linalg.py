"""Dense complex matrix helpers and the two small eigensolvers the toolkit needs.

Everything here operates on plain ``numpy`` arrays treated as immutable
values: functions never mutate their arguments and always return fresh
arrays.  Residuals are always measured in the max-absolute-entry norm so
that tolerances are dimension independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Default tolerance for identity / residual checks.  All algebraic identities
# implemented by this package are exact in exact arithmetic; 1e-10 leaves
# ample headroom above double-precision rounding.
DEFAULT_TOL = 1e-10

# Iteration budget of the implicit-QL eigensolver, per eigenvalue.
MAX_QL_SWEEPS = 50

_EPS = float(np.finfo(np.float64).eps)


class ConvergenceError(RuntimeError):
    """QL sweep budget exhausted while isolating one eigenvalue."""

    def __init__(self, index: int, max_sweeps: int = MAX_QL_SWEEPS):
        super().__init__(
            f"eigenvalue {index} did not converge within {max_sweeps} QL sweeps"
        )
        self.index = index
        self.max_sweeps = max_sweeps


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a fresh 2-d complex128 array with finite entries."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(v) -> np.ndarray:
    """Coerce ``v`` to a fresh 1-d complex128 array with finite entries."""
    w = np.array(v, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(w.real)) or not np.all(np.isfinite(w.imag)):
        raise ValueError("vector entries must be finite")
    return w


def max_abs(a) -> float:
    """Max-absolute-entry norm (the residual norm used throughout)."""
    arr = np.asarray(a)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def mat_mul(a, b) -> np.ndarray:
    """Matrix product A @ B with an explicit dimension check."""
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape[1] != bm.shape[0]:
        raise ValueError(f"incompatible shapes {am.shape} x {bm.shape}")
    return am @ bm


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def anticommutator(a, b) -> np.ndarray:
    """AB + BA for two square matrices of the same dimension."""
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape != bm.shape or am.shape[0] != am.shape[1]:
        raise ValueError(f"need equal square matrices, got {am.shape} and {bm.shape}")
    return am @ bm + bm @ am


def commutator(a, b) -> np.ndarray:
    """AB - BA for two square matrices of the same dimension."""
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape != bm.shape or am.shape[0] != am.shape[1]:
        raise ValueError(f"need equal square matrices, got {am.shape} and {bm.shape}")
    return am @ bm - bm @ am


@dataclass(frozen=True)
class Eig2:
    """Closed-form 2x2 eigensystem.

    ``degenerate`` flags a (near-)coincident spectrum; for a defective
    matrix the two returned vectors coincide.
    """

    values: tuple[complex, complex]
    vectors: tuple[np.ndarray, np.ndarray]
    degenerate: bool


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    """Euclidean-normalize and rotate the first significant entry to be
    positive real, so outputs are deterministic."""
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    w = v / nrm
    for x in w:
        if abs(x) > 1e-8:
            w = w * (x.conjugate() / abs(x))
            break
    return w


def eig_2x2(a, tol: float = DEFAULT_TOL) -> Eig2:
    """Eigenvalues and eigenvectors of a 2x2 matrix via trace/determinant.

    The eigenvalue with the principal square root added comes first:
    ``lambda = tr/2 +- sqrt(tr^2/4 - det)``.  Vectors are Euclidean
    normalized with a first-significant-entry-positive-real phase.
    """
    m = as_matrix(a)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {m.shape}")
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = np.sqrt(np.complex128(tr * tr / 4.0 - det))
    lam_p = tr / 2.0 + disc
    lam_m = tr / 2.0 - disc
    scale = max(max_abs(m), 1.0)
    degenerate = abs(lam_p - lam_m) <= tol * scale

    # Scalar matrix: full eigenspace, return the canonical basis.
    if max(abs(m[0, 1]), abs(m[1, 0]), abs(m[0, 0] - m[1, 1])) <= tol * scale:
        e1 = np.array([1.0, 0.0], dtype=np.complex128)
        e2 = np.array([0.0, 1.0], dtype=np.complex128)
        return Eig2((complex(lam_p), complex(lam_m)), (e1, e2), degenerate)

    def vec(lam: complex) -> np.ndarray:
        c1 = np.array([m[0, 1], lam - m[0, 0]], dtype=np.complex128)
        c2 = np.array([lam - m[1, 1], m[1, 0]], dtype=np.complex128)
        v = c1 if max_abs(c1) >= max_abs(c2) else c2
        return _phase_normalize(v)

    return Eig2(
        (complex(lam_p), complex(lam_m)), (vec(lam_p), vec(lam_m)), degenerate
    )


@dataclass(frozen=True)
class SymTridiag:
    """Real symmetric tridiagonal matrix, stored as diagonal/off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.array(self.diag, dtype=np.float64)
        e = np.array(self.offdiag, dtype=np.float64)
        if d.ndim != 1 or e.ndim != 1 or e.size != max(d.size - 1, 0):
            raise ValueError(
                f"need len(offdiag) == len(diag) - 1, got {d.size} and {e.size}"
            )
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("tridiagonal entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return int(self.diag.size)

    def dense(self) -> np.ndarray:
        m = np.diag(self.diag).astype(np.float64)
        idx = np.arange(self.n - 1)
        m[idx, idx + 1] = self.offdiag
        m[idx + 1, idx] = self.offdiag
        return m

    def trace(self) -> float:
        return float(self.diag.sum())

    def norm_max(self) -> float:
        return max(max_abs(self.diag), max_abs(self.offdiag)) if self.n else 0.0


def eig_sym_tridiag(t: SymTridiag, tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending.

    Implicit QL with Wilkinson shifts, eigenvalues only.  Off-diagonal
    entries are deflated once |e_m| <= tol * (|d_m| + |d_m+1|), so the
    result is backward stable to within tol * ||T||.  Raises
    ``ConvergenceError`` carrying the failing index if any eigenvalue
    needs more than ``MAX_QL_SWEEPS`` sweeps.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    thr = max(tol, _EPS)
    n = t.n
    if n == 0:
        return np.empty(0, dtype=np.float64)
    d = t.diag.copy()
    e = np.zeros(n, dtype=np.float64)
    e[: n - 1] = t.offdiag

    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= thr * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > MAX_QL_SWEEPS:
                raise ConvergenceError(l)
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # Underflow in the rotation chain: drop the current
                    # transformation and retry from the deflated problem.
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0

    d.sort()
    return d
