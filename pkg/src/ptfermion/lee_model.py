"""PT-symmetric fermion-boson model without crossing symmetry.

H = m a^dag a - M eta^PT eta - g a^dag eta^PT eta - g a eta^PT eta, where a
is a normal boson mode and (eta, eta^PT) is a normalized 2x2 nilpotent
pair, so the fermion number operator is -eta^PT eta.  Fermion number is
conserved, the one-fermion sector reduces to a symmetric tridiagonal
matrix over the boson number basis, and the spectrum is exactly
E_N = N m + M - g^2/m: the physical fermion mass M - g^2/m sits below the
bare mass whenever g != 0.

Three independent routes to that spectrum are implemented and cross-check
each other: truncated diagonalization, the three-term coefficient
recursion, and the generating-function (series) solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import rep2
from .linalg import SymTridiag, eig_sym_tridiag

BALANCE_NORMALIZABLE = "normalizable"
BALANCE_NON_NORMALIZABLE = "non-normalizable"
BALANCE_INCONCLUSIVE = "inconclusive"

# Relative half-width of the acceptance band around each asymptotic balance.
BALANCE_BAND = 0.20


@dataclass(frozen=True)
class LeeParams:
    """(m, M, g, n_max): boson mass, bare fermion mass, coupling amplitude,
    and the boson-number truncation."""

    m: float
    M: float
    g: float
    n_max: int = 64

    def __post_init__(self):
        if not self.m > 0.0:
            raise ValueError("boson mass m must be positive")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")


def exact_spectrum(p: LeeParams, level: int) -> float:
    """E_N = N m + M - g^2/m for the N-th physical fermion state."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    return level * p.m + p.M - p.g**2 / p.m


def exact_spectrum_fraction(p: LeeParams, level: int) -> Fraction:
    """E_N as an exact rational over the binary values of (m, M, g).

    This is the eigenvalue to pass to ``recursion_coeffs`` when the float
    form of E_N is not exactly representable (e.g. g = 0.1): the forward
    recursion amplifies any offset from the true eigenvalue exponentially.
    """
    if level < 0:
        raise ValueError("level must be nonnegative")
    m, big_m, g = Fraction(p.m), Fraction(p.M), Fraction(p.g)
    return level * m + big_m - g * g / m


def renormalized_mass(p: LeeParams) -> float:
    """Physical fermion mass M - g^2/m (strictly below M for g != 0)."""
    return p.M - p.g**2 / p.m


def one_fermion_tridiag(p: LeeParams) -> SymTridiag:
    """H restricted to the one-fermion sector over |1, n>, n = 0..n_max:
    diagonal m n + M, off-diagonal g sqrt(n+1)."""
    n = np.arange(p.n_max + 1, dtype=np.float64)
    diag = p.m * n + p.M
    offdiag = p.g * np.sqrt(n[:-1] + 1.0)
    return SymTridiag(diag, offdiag)


def boson_annihilation(dim: int) -> np.ndarray:
    """Truncated boson lowering operator: a |n> = sqrt(n) |n-1>."""
    return np.diag(np.sqrt(np.arange(1.0, dim)), 1).astype(np.complex128)


def full_hamiltonian(p: LeeParams, rep: rep2.Rep2Params) -> np.ndarray:
    """The 2 (n_max+1)-dimensional Hamiltonian in the fermion-ladder basis.

    The fermionic factor is the number operator eta^PT eta of the
    normalized pair built from ``rep``, conjugated into its eigenbasis
    (the ground/excited ladder states), tensored with the truncated boson
    operators.  Fermion number conservation then shows up as exact block
    structure: the zero-fermion block is the free boson diag(m n) and the
    one-fermion block is ``one_fermion_tridiag``.
    """
    eta_n, eta_pt_n = rep2.normalized_pair(rep)
    n_pt = rep2.number_operator(eta_n, eta_pt_n)
    ground, excited = rep2.states(rep)
    basis = np.column_stack([ground, excited])
    n_ladder = np.linalg.solve(basis, n_pt @ basis)

    dim = p.n_max + 1
    lower = boson_annihilation(dim)
    number = np.diag(np.arange(dim, dtype=np.float64)).astype(np.complex128)
    position = lower + lower.conj().T
    eye2 = np.eye(2, dtype=np.complex128)
    eye_b = np.eye(dim, dtype=np.complex128)
    return p.m * np.kron(eye2, number) - np.kron(
        n_ladder, p.M * eye_b + p.g * position
    )


@dataclass(frozen=True)
class SpectrumReport:
    """Truncated vs exact one-fermion levels.

    Only levels up to n_max // 2 are scored: the top of a hard-wall Fock
    truncation is never converged.
    """

    truncated: np.ndarray
    exact: np.ndarray
    abs_errors: np.ndarray
    n_max: int
    scored_levels: int
    converged_levels: int
    threshold: float


def truncated_spectrum(
    p: LeeParams, tol: float = 1e-12, threshold: float = 1e-8
) -> SpectrumReport:
    """Diagonalize the truncated one-fermion sector and compare level by
    level against E_N."""
    evals = eig_sym_tridiag(one_fermion_tridiag(p), tol=tol)
    levels = np.arange(p.n_max + 1)
    exact = levels * p.m + p.M - p.g**2 / p.m
    errors = np.abs(evals - exact)
    scored = p.n_max // 2 + 1
    converged = int(np.count_nonzero(errors[:scored] <= threshold))
    return SpectrumReport(
        truncated=evals,
        exact=exact,
        abs_errors=errors,
        n_max=p.n_max,
        scored_levels=scored,
        converged_levels=converged,
        threshold=threshold,
    )


@dataclass(frozen=True)
class CoeffSequence:
    """Scaled expansion coefficients d_n (c_n = d_n sqrt(n!)), with the
    leading coefficient pinned to d_0 = 1."""

    values: tuple[float, ...]
    d0: float = 1.0


def _to_fraction(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(float(x))


def recursion_coeffs(p: LeeParams, energy, n_terms: int) -> CoeffSequence:
    """Forward three-term recursion for the d_n at a trial energy E:

        (m n + M) d_n + g d_{n-1} + g (n+1) d_{n+1} = E d_n,  d_0 = 1.

    At an eigenvalue the wanted solution is exponentially subdominant, so
    floating-point forward recursion is useless beyond n of order ten; the
    recursion is therefore run in exact rational arithmetic over the binary
    values of (m, M, g, E) and converted to float at the end.  ``energy``
    may be a float or a ``Fraction`` (use ``exact_spectrum_fraction`` when
    E_N itself is not exactly representable).
    """
    if p.g == 0.0:
        raise ValueError("the recursion degenerates for g = 0")
    if n_terms < 2:
        raise ValueError("need at least two terms")
    m, big_m, g = Fraction(p.m), Fraction(p.M), Fraction(p.g)
    e = _to_fraction(energy)
    d = [Fraction(1), (e - big_m) / g]
    for n in range(1, n_terms - 1):
        d.append(((e - m * n - big_m) * d[n] - g * d[n - 1]) / (g * (n + 1)))
    return CoeffSequence(values=tuple(float(x) for x in d))


def generating_coeffs(p: LeeParams, level: int, n_terms: int) -> CoeffSequence:
    """Taylor coefficients of exp(-g x / m) (m x + g)^N, scaled to d_0 = 1.

    This is the closed-form generating function of the d_n at E = E_N; its
    exponent N must be a nonnegative integer, which is precisely the
    quantization condition producing the exact spectrum.  Computed in
    exact rational arithmetic for termwise comparability with
    ``recursion_coeffs``.
    """
    if level < 0:
        raise ValueError("level must be a nonnegative integer")
    if n_terms < 1:
        raise ValueError("need at least one term")
    m, big_m, g = Fraction(p.m), Fraction(p.M), Fraction(p.g)
    # Consistency of the quantization condition: at E = E_N the exponent
    # E/m - M/m + g^2/m^2 is the integer N, identically in exact arithmetic.
    e = exact_spectrum_fraction(p, level)
    exponent = e / m - big_m / m + g * g / (m * m)
    if abs(exponent - level) > Fraction(1, 10**9):
        raise ValueError(f"exponent {exponent} is not the integer {level}")
    if g == 0:
        if level == 0:
            return CoeffSequence(values=(1.0,) + (0.0,) * (n_terms - 1))
        raise ValueError("g = 0 with level > 0 has a vanishing leading coefficient")
    vals = []
    for n in range(n_terms):
        acc = Fraction(0)
        for k in range(0, min(n, level) + 1):
            acc += (
                math.comb(level, k)
                * m**k
                * g ** (level - k)
                * (-g / m) ** (n - k)
                / math.factorial(n - k)
            )
        vals.append(acc / g**level)
    return CoeffSequence(values=tuple(float(x) for x in vals))


def classify_balance(seq: CoeffSequence, p: LeeParams) -> str:
    """Identify the asymptotic balance of a coefficient tail.

    Over the last quarter of the sequence the ratios r_n = d_{n+1}/d_n are
    examined; the final (most converged) ratio decides.  If r_n (n+1) sits
    within 20% of -g/m the sequence follows the factorially decaying
    balance and the state is normalizable; if r_n sits within 20% of -m/g
    it follows the geometric balance and is not.  Anything else (including
    vanishing tail entries) is inconclusive.  The approach to either
    balance is O(1/n), so short sequences need the full last-quarter
    window to have settled.
    """
    vals = seq.values
    if len(vals) < 10:
        raise ValueError("need at least 10 coefficients to classify")
    if p.g == 0.0:
        return BALANCE_INCONCLUSIVE
    start = (3 * len(vals)) // 4
    window = range(start, len(vals) - 1)
    if any(vals[n] == 0.0 or vals[n + 1] == 0.0 for n in window):
        return BALANCE_INCONCLUSIVE
    last = len(vals) - 2
    ratio = vals[last + 1] / vals[last]
    target_factorial = -p.g / p.m
    target_geometric = -p.m / p.g
    dev_factorial = abs(ratio * (last + 1) - target_factorial) / abs(target_factorial)
    dev_geometric = abs(ratio - target_geometric) / abs(target_geometric)
    if dev_factorial <= BALANCE_BAND:
        return BALANCE_NORMALIZABLE
    if dev_geometric <= BALANCE_BAND:
        return BALANCE_NON_NORMALIZABLE
    return BALANCE_INCONCLUSIVE


def norm_partial_sum(seq: CoeffSequence, n_terms: int) -> float:
    """Partial norm sum_{n=0}^{n_terms} d_n^2 n!.

    Each term is assembled in log space (2 ln|d_n| + lgamma(n+1)) so the
    factorial cannot overflow on its own; if a term itself exceeds the
    double range the sum has manifestly diverged and an ``OverflowError``
    is raised.
    """
    if n_terms < 0:
        raise ValueError("n_terms must be nonnegative")
    if n_terms >= len(seq.values):
        raise ValueError(
            f"sequence holds {len(seq.values)} coefficients, need {n_terms + 1}"
        )
    total = 0.0
    for n in range(n_terms + 1):
        d = seq.values[n]
        if d == 0.0:
            continue
        log_term = 2.0 * math.log(abs(d)) + math.lgamma(n + 1)
        if log_term > 700.0:
            raise OverflowError(
                f"norm partial sum diverges (term at n = {n} overflows)"
            )
        total += math.exp(log_term)
    return total
