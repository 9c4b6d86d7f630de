"""The four-dimensional nilpotent families and their PT/CPT algebra.

Two constructions live here.  The twelve-real-parameter family (six
arbitrary complex entries a, b, c, f, g, h) is rank one, hence nilpotent
for every parameter choice; demanding that its PT anticommutator be a
multiple of the identity forces it to vanish outright, so this family only
realizes the Grassmann algebra.  The block family built from 2x2 blocks
f*I, alpha*X, beta*X^dag with X = [[c, b], [b*, -c*]] is nilpotent once
f^2 + alpha*beta*(|b|^2 + |c|^2) = 0 and carries the full epsilon = -1
algebra, a closed-form norm-flip matrix K, and ladder states.

Parity and time reversal are S = diag(1, 1, -1, -1) and Z = diag(e2, e2)
with e2 = [[0, 1], [-1, 0]] (so T^2 = -1, as required for fermions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

import numpy as np

from . import pt_algebra
from .linalg import DEFAULT_TOL, anticommutator, max_abs
from .pt_algebra import SymmetryData

E2 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=np.complex128)

S4 = np.diag([1.0, 1.0, -1.0, -1.0]).astype(np.complex128)
Z4 = np.block(
    [[E2, np.zeros((2, 2))], [np.zeros((2, 2)), E2]]
).astype(np.complex128)


def standard_symmetry(k=None) -> SymmetryData:
    """S = diag(I, -I), Z = diag(e2, e2), optionally with a K matrix."""
    return SymmetryData(S4, Z4, k)


# ---------------------------------------------------------------------------
# Twelve-parameter family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rep4TwelveParams:
    """Six arbitrary complex entries; F = c*h + b*g + a*f is derived."""

    a: complex
    b: complex
    c: complex
    f: complex
    g: complex
    h: complex

    @property
    def big_f(self) -> complex:
        return self.c * self.h + self.b * self.g + self.a * self.f


def eta_twelve(p: Rep4TwelveParams) -> np.ndarray:
    """Rank-one nilpotent matrix (1, a, b, c)^T (-F, f, g, h).

    Row by row: (-F, f, g, h), then a, b, c times that row.  Trace and
    determinant vanish identically, so eta^2 = 0 for all parameters.
    """
    big_f = p.big_f
    row = np.array([-big_f, p.f, p.g, p.h], dtype=np.complex128)
    col = np.array([1.0, p.a, p.b, p.c], dtype=np.complex128)
    return np.outer(col, row)


def grassmann_relations_hold(
    p: Rep4TwelveParams, tol: float = DEFAULT_TOL
) -> bool:
    """Check a* F = -f, b* F = g, c* F = h.

    When these hold, {eta, eta^PT} vanishes identically and the family
    realizes a Grassmann algebra.
    """
    big_f = p.big_f
    scale = max(
        1.0, abs(big_f), abs(p.f), abs(p.g), abs(p.h), abs(p.a), abs(p.b), abs(p.c)
    )
    res = max(
        abs(p.a.conjugate() * big_f + p.f),
        abs(p.b.conjugate() * big_f - p.g),
        abs(p.c.conjugate() * big_f - p.h),
    )
    return res <= tol * scale


def sample_grassmann(rng: Random) -> Rep4TwelveParams:
    """Draw a twelve-parameter member satisfying the Grassmann relations.

    The relations plus the definition of F force |b|^2 + |c|^2 - |a|^2 = 1
    (or the zero matrix), so draw a and a direction for (b, c), rescale to
    meet that constraint, draw F freely, and read off f, g, h.
    """
    while True:
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        nrm2 = abs(b) ** 2 + abs(c) ** 2
        if nrm2 > 1e-12:
            break
    scale = math.sqrt((1.0 + abs(a) ** 2) / nrm2)
    b *= scale
    c *= scale
    big_f = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    return Rep4TwelveParams(
        a=a,
        b=b,
        c=c,
        f=-a.conjugate() * big_f,
        g=b.conjugate() * big_f,
        h=c.conjugate() * big_f,
    )


GRASSMANN_EXAMPLE = np.array(
    [
        [1, 1, 1j, -1j],
        [1, 1, 1j, -1j],
        [1j, 1j, -1, 1],
        [-1j, -1j, 1, -1],
    ],
    dtype=np.complex128,
)

# Parameter values reproducing GRASSMANN_EXAMPLE through eta_twelve.
GRASSMANN_EXAMPLE_PARAMS = Rep4TwelveParams(
    a=1, b=1j, c=-1j, f=1, g=1j, h=-1j
)


@dataclass(frozen=True)
class AnticommutatorBlocks:
    """Entrywise closed form of {eta, eta^PT} for the twelve-parameter
    family, compared against the direct matrix product."""

    closed_form: np.ndarray
    direct: np.ndarray
    j_scalar: float
    k_scalar: float

    @property
    def max_residual(self) -> float:
        return max_abs(self.closed_form - self.direct)


def anticommutator_blocks(p: Rep4TwelveParams) -> AnticommutatorBlocks:
    """Evaluate the J/K closed form of {eta, eta^PT} entry by entry.

    J = |F|^2 + |f|^2 - |g|^2 - |h|^2 and K = 1 + |a|^2 - |b|^2 - |c|^2;
    both must vanish for the anticommutator to be a (zero) multiple of the
    identity, which is the Grassmann dichotomy of this family.
    """
    a, b, c, f, g, h = p.a, p.b, p.c, p.f, p.g, p.h
    big_f = p.big_f
    j = abs(big_f) ** 2 + abs(f) ** 2 - abs(g) ** 2 - abs(h) ** 2
    k = 1.0 + abs(a) ** 2 - abs(b) ** 2 - abs(c) ** 2
    ac, bc, cc = a.conjugate(), b.conjugate(), c.conjugate()
    fc, gc, hc, big_fc = (
        f.conjugate(),
        g.conjugate(),
        h.conjugate(),
        big_f.conjugate(),
    )
    closed = np.array(
        [
            [
                j + abs(big_f) ** 2 * k,
                ac * j - big_fc * f * k,
                -bc * j - big_fc * g * k,
                -cc * j - big_fc * h * k,
            ],
            [
                a * j - fc * big_f * k,
                abs(a) ** 2 * j + abs(f) ** 2 * k,
                -a * bc * j + fc * g * k,
                -a * cc * j + fc * h * k,
            ],
            [
                b * j + gc * big_f * k,
                b * ac * j - gc * f * k,
                -abs(b) ** 2 * j - abs(g) ** 2 * k,
                -b * cc * j - gc * h * k,
            ],
            [
                c * j + hc * big_f * k,
                c * ac * j - hc * f * k,
                -c * bc * j - hc * g * k,
                -abs(c) ** 2 * j - abs(h) ** 2 * k,
            ],
        ],
        dtype=np.complex128,
    )
    em = eta_twelve(p)
    direct = anticommutator(em, pt_algebra.pt_adjoint(em, standard_symmetry()))
    return AnticommutatorBlocks(closed, direct, float(j), float(k))


# ---------------------------------------------------------------------------
# Block family
# ---------------------------------------------------------------------------

def _x_block(b: complex, c: complex) -> np.ndarray:
    return np.array(
        [[c, b], [b.conjugate(), -c.conjugate()]], dtype=np.complex128
    )


@dataclass(frozen=True)
class Rep4BlockParams:
    """Block ansatz [[f I, alpha X], [beta X^dag, -f I]] with complex b, c
    and real alpha, beta; nilpotency fixes f^2 = -alpha*beta*(|b|^2+|c|^2)."""

    b: complex
    c: complex
    alpha: float
    beta: float
    f_sign: int = 1

    def __post_init__(self):
        if self.f_sign not in (1, -1):
            raise ValueError("f_sign must be +1 or -1")
        if self.alpha * self.beta * self.pair_norm_sq > 0.0:
            raise ValueError(
                "alpha*beta*(|b|^2+|c|^2) must be nonpositive for a real f"
            )

    @property
    def pair_norm_sq(self) -> float:
        """|b|^2 + |c|^2."""
        return abs(self.b) ** 2 + abs(self.c) ** 2

    @property
    def f(self) -> float:
        return self.f_sign * math.sqrt(-self.alpha * self.beta * self.pair_norm_sq)


def eta_block(p: Rep4BlockParams) -> np.ndarray:
    x = _x_block(p.b, p.c)
    eye = np.eye(2, dtype=np.complex128)
    return np.block(
        [[p.f * eye, p.alpha * x], [p.beta * x.conj().T, -p.f * eye]]
    )


def pt_anticommutator_scalar(p: Rep4BlockParams) -> float:
    """{eta, eta^PT} = s * identity with s = -(alpha+beta)^2 (|b|^2+|c|^2);
    the Grassmann branch is alpha = -beta."""
    return -((p.alpha + p.beta) ** 2) * p.pair_norm_sq


@dataclass(frozen=True)
class Rep4CParams:
    """Norm-flip matrix parameters (g, gamma) tied to a block family by
    g^2 - gamma^2 (|b|^2+|c|^2) = 1."""

    g: float
    gamma: float

    @classmethod
    def from_gamma(
        cls, gamma: float, block: Rep4BlockParams, g_sign: int = 1
    ) -> "Rep4CParams":
        """Derive g = g_sign * sqrt(1 + gamma^2 (|b|^2+|c|^2)) so the
        constraint holds exactly."""
        if g_sign not in (1, -1):
            raise ValueError("g_sign must be +1 or -1")
        g = g_sign * math.sqrt(1.0 + gamma**2 * block.pair_norm_sq)
        return cls(g=g, gamma=gamma)

    def constraint_residual(self, block: Rep4BlockParams) -> float:
        return abs(self.g**2 - self.gamma**2 * block.pair_norm_sq - 1.0)


def c_matrix(
    p: Rep4BlockParams, k: Rep4CParams, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """K = [[g I, -gamma X], [gamma X^dag, -g I]]; K^2 = 1 under the
    g/gamma constraint and K S Z = S Z K*."""
    res = k.constraint_residual(p)
    if res > tol:
        raise ValueError(f"g^2 - gamma^2 (|b|^2+|c|^2) = 1 violated by {res:.3e}")
    x = _x_block(p.b, p.c)
    eye = np.eye(2, dtype=np.complex128)
    return np.block(
        [[k.g * eye, -k.gamma * x], [k.gamma * x.conj().T, -k.g * eye]]
    )


def cpt_adjoint_closed(p: Rep4BlockParams, k: Rep4CParams) -> np.ndarray:
    """Closed-form eta^CPT = [[D I, -A X], [B X^dag, -D I]].

    Coefficients (r = |b|^2 + |c|^2):
      D = f g^2 + r gamma (gamma f + alpha g - beta g)
      A = 2 gamma f g - beta g^2 + alpha gamma^2 r
      B = 2 gamma f g + alpha g^2 - beta gamma^2 r
    Agrees with the generic K S eta^dag S K evaluation.
    """
    r = p.pair_norm_sq
    f, alpha, beta = p.f, p.alpha, p.beta
    g, gamma = k.g, k.gamma
    d_coef = f * g**2 + r * gamma * (gamma * f + alpha * g - beta * g)
    a_coef = 2.0 * gamma * f * g - beta * g**2 + alpha * gamma**2 * r
    b_coef = 2.0 * gamma * f * g + alpha * g**2 - beta * gamma**2 * r
    x = _x_block(p.b, p.c)
    eye = np.eye(2, dtype=np.complex128)
    return np.block(
        [[d_coef * eye, -a_coef * x], [b_coef * x.conj().T, -d_coef * eye]]
    )


def cpt_anticommutator_scalar(p: Rep4BlockParams, k: Rep4CParams) -> float:
    """{eta, eta^CPT} = s * identity with the nonnegative scalar
    s = (|b|^2+|c|^2) [2 gamma f + (alpha - beta) g]^2."""
    return p.pair_norm_sq * (2.0 * k.gamma * p.f + (p.alpha - p.beta) * k.g) ** 2


def states(p: Rep4BlockParams) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized ground state (f, 0, beta c*, beta b*) and excited state
    (beta (|b|^2+|c|^2), 0, f c*, f b*).

    eta annihilates the ground state and eta^PT maps it to the excited
    state up to the factor -(alpha + beta); the two coincide (up to sign)
    exactly on the Grassmann branch.
    """
    if p.pair_norm_sq == 0.0:
        raise ValueError("degenerate family (b = c = 0) has only the zero operator")
    f, beta = p.f, p.beta
    ground = np.array(
        [f, 0.0, beta * p.c.conjugate(), beta * p.b.conjugate()],
        dtype=np.complex128,
    )
    excited = np.array(
        [beta * p.pair_norm_sq, 0.0, f * p.c.conjugate(), f * p.b.conjugate()],
        dtype=np.complex128,
    )
    return ground, excited
