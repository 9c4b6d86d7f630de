"""The two-dimensional nilpotent fermionic family and its PT/CPT algebra.

A traceless real 2x2 matrix eta = [[a, b], [c, -a]] is nilpotent exactly
when a^2 + b*c = 0, so the family is parametrized by (b, c) with b*c <= 0
and a sign choice for a.  Parity and time reversal are both sigma_x here.
The PT anticommutator {eta, eta^PT} is diag(-4a^2): nonpositive, so only
the epsilon = -1 algebra (a != 0) and the Grassmann algebra (a = 0) have
2x2 representations.  A PT-symmetric Hamiltonian [[alpha, beta], [gamma,
alpha]] supplies the norm-flip matrix K and ladder operators that turn the
two eigenstates into a fermionic occupation doublet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import pt_algebra
from .linalg import DEFAULT_TOL, as_vector, eig_2x2, identity, max_abs
from .pt_algebra import SymmetryData

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)

PHASE_UNBROKEN = "unbroken"
PHASE_BROKEN = "broken"


def standard_symmetry(k=None) -> SymmetryData:
    """S = Z = sigma_x, optionally with a norm-flip matrix K."""
    return SymmetryData(SIGMA_X, SIGMA_X, k)


@dataclass(frozen=True)
class Rep2Params:
    """(b, c) with b*c <= 0; a = a_sign * sqrt(-b*c) is then real."""

    b: float
    c: float
    a_sign: int = 1

    def __post_init__(self):
        if self.a_sign not in (1, -1):
            raise ValueError("a_sign must be +1 or -1")
        if self.b * self.c > 0.0:
            raise ValueError(
                f"b*c = {self.b * self.c} must be nonpositive for a real family"
            )

    @property
    def a(self) -> float:
        return self.a_sign * math.sqrt(-self.b * self.c)


def eta(p: Rep2Params) -> np.ndarray:
    """The nilpotent matrix [[a, b], [c, -a]]."""
    a = p.a
    return np.array([[a, p.b], [p.c, -a]], dtype=np.complex128)


def eta_pt(p: Rep2Params) -> np.ndarray:
    """Its PT adjoint [[-a, b], [c, a]] (= S eta^dag S with S = sigma_x)."""
    a = p.a
    return np.array([[-a, p.b], [p.c, a]], dtype=np.complex128)


def pt_anticommutator_scalar(p: Rep2Params) -> float:
    """{eta, eta^PT} = s * identity with s = -4a^2 (nonpositive)."""
    return -4.0 * p.a * p.a


def normalized_pair(p: Rep2Params) -> tuple[np.ndarray, np.ndarray]:
    """(eta, eta^PT) rescaled by 2a so that {eta, eta^PT} = -identity."""
    a = p.a
    if a == 0.0:
        raise ValueError("the Grassmann member (a = 0) cannot be normalized")
    return eta(p) / (2.0 * a), eta_pt(p) / (2.0 * a)


def states(p: Rep2Params) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized ground state (-b, a) and excited state (b, a).

    eta annihilates the ground state; eta^PT maps it onto the excited
    state up to a factor 2a.
    """
    a = p.a
    if a == 0.0 and p.b == 0.0:
        raise ValueError("a = b = 0 gives only the zero vector")
    ground = np.array([-p.b, a], dtype=np.complex128)
    excited = np.array([p.b, a], dtype=np.complex128)
    return ground, excited


def pt_normalize(v, sym: SymmetryData | None = None) -> np.ndarray:
    """Rescale v by 1/sqrt(|(v, v)_PT|); errors on a PT-null vector."""
    sym = sym if sym is not None else standard_symmetry()
    w = as_vector(v)
    nrm = abs(pt_algebra.pt_inner(w, w, sym))
    if nrm <= 1e-300:
        raise ValueError("vector has (numerically) vanishing PT norm")
    return w / math.sqrt(nrm)


def number_operator(eta_m, eta_pt_m) -> np.ndarray:
    """N = eta^PT eta; eigenvalues {0, -1} on a normalized pair, i.e. minus
    the occupation number."""
    em = np.asarray(eta_m, dtype=np.complex128)
    pm = np.asarray(eta_pt_m, dtype=np.complex128)
    if em.ndim != 2 or em.shape != pm.shape or em.shape[0] != em.shape[1]:
        raise ValueError("eta and eta^PT must be square matrices of equal shape")
    return pm @ em


@dataclass(frozen=True)
class Ham2Params:
    """Real parameters of the PT-symmetric Hamiltonian [[alpha, beta],
    [gamma, alpha]]."""

    alpha: float
    beta: float
    gamma: float

    @property
    def is_unbroken(self) -> bool:
        """Real spectrum iff beta*gamma >= 0."""
        return self.beta * self.gamma >= 0.0


def hamiltonian(h: Ham2Params) -> np.ndarray:
    return np.array(
        [[h.alpha, h.beta], [h.gamma, h.alpha]], dtype=np.complex128
    )


@dataclass(frozen=True)
class Eigensystem2:
    """Eigenvalues alpha +- sqrt(beta*gamma) and eigenvectors.

    For beta, gamma > 0 the vectors are the closed-form PT-normalized pair
    (1/sqrt2) (q, +-1/q) with q = (beta/gamma)^(1/4); otherwise they come
    from the generic 2x2 solver and are Euclidean normalized.
    """

    lam_plus: complex
    lam_minus: complex
    v_plus: np.ndarray
    v_minus: np.ndarray
    phase: str
    degenerate: bool = False


def eigensystem(h: Ham2Params, tol: float = DEFAULT_TOL) -> Eigensystem2:
    phase = PHASE_UNBROKEN if h.is_unbroken else PHASE_BROKEN
    if h.beta > 0.0 and h.gamma > 0.0:
        root = math.sqrt(h.beta * h.gamma)
        q = (h.beta / h.gamma) ** 0.25
        v_plus = np.array([q, 1.0 / q], dtype=np.complex128) / math.sqrt(2.0)
        v_minus = np.array([q, -1.0 / q], dtype=np.complex128) / math.sqrt(2.0)
        return Eigensystem2(
            complex(h.alpha + root), complex(h.alpha - root), v_plus, v_minus, phase
        )
    sol = eig_2x2(hamiltonian(h), tol=tol)
    return Eigensystem2(
        sol.values[0],
        sol.values[1],
        sol.vectors[0],
        sol.vectors[1],
        phase,
        degenerate=sol.degenerate,
    )


def _beta_over_gamma(h: Ham2Params) -> float:
    if h.gamma == 0.0 or h.beta / h.gamma <= 0.0:
        raise ValueError(
            "beta/gamma must be positive (unbroken phase) for this construction"
        )
    return h.beta / h.gamma


def c_matrix(h: Ham2Params) -> np.ndarray:
    """K = [[0, sqrt(beta/gamma)], [sqrt(gamma/beta), 0]]: squares to the
    identity, commutes with H, and flips the sign of the negative-norm
    eigenstate."""
    s = math.sqrt(_beta_over_gamma(h))
    return np.array([[0.0, s], [1.0 / s, 0.0]], dtype=np.complex128)


def eta_from_hamiltonian(h: Ham2Params) -> np.ndarray:
    """Lowering operator (1/2)[[1, sqrt(beta/gamma)], [-sqrt(gamma/beta), -1]]
    for the Hamiltonian eigenbasis: it kills v_minus and maps v_plus to
    v_minus."""
    s = math.sqrt(_beta_over_gamma(h))
    return 0.5 * np.array([[1.0, s], [-1.0 / s, -1.0]], dtype=np.complex128)


def hamiltonian_from_ladder(h: Ham2Params) -> np.ndarray:
    """Reassemble H = (lam_plus - lam_minus) * (-N) + lam_minus * identity
    from the ladder pair of ``eta_from_hamiltonian``."""
    em = eta_from_hamiltonian(h)
    pm = pt_algebra.pt_adjoint(em, standard_symmetry())
    n_op = number_operator(em, pm)
    root = math.sqrt(h.beta * h.gamma)
    gap = 2.0 * root
    lam_minus = h.alpha - root
    return gap * (-n_op) + lam_minus * identity(2)


@dataclass(frozen=True)
class Rep2CParams:
    """General real norm-flip candidate K = [[g, B], [A, -g]], constrained
    by K^2 = 1 i.e. g^2 + A*B = 1."""

    g_c: float
    a_c: float
    b_c: float

    def __post_init__(self):
        res = abs(self.g_c**2 + self.a_c * self.b_c - 1.0)
        if res > DEFAULT_TOL:
            raise ValueError(f"g^2 + A*B = 1 violated by {res:.3e}")


def c_matrix_general(k: Rep2CParams) -> np.ndarray:
    return np.array(
        [[k.g_c, k.b_c], [k.a_c, -k.g_c]], dtype=np.complex128
    )


def cpt_anticommutator_scalar(p: Rep2Params, k: Rep2CParams) -> float:
    """{eta, eta^CPT} = s * identity with s = 2a^2 AB + c^2 B^2 + b^2 A^2,
    which reduces to (bA - cB)^2 once a^2 = -bc is used."""
    a2 = p.a * p.a
    return 2.0 * a2 * k.a_c * k.b_c + p.c**2 * k.b_c**2 + p.b**2 * k.a_c**2


def grassmann_member(p: Rep2Params) -> bool:
    """True when the family degenerates to the Grassmann algebra (a = 0)."""
    return p.a == 0.0


def residual_anticommutator(p: Rep2Params, tol: float = DEFAULT_TOL) -> float:
    """Max-entry residual of {eta, eta^PT} - (-4a^2) * identity."""
    acm = pt_algebra.pt_adjoint(eta(p), standard_symmetry())
    lhs = eta(p) @ acm + acm @ eta(p)
    return max_abs(lhs - pt_anticommutator_scalar(p) * identity(2))
