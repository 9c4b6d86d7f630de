"""Numerical toolkit for PT- and CPT-symmetric fermionic operator algebras.

Nilpotent 2x2 and 4x4 representations with their PT/CPT adjoints, every
closed-form identity as an executable check, and an exactly solvable
PT-symmetric fermion-boson model cross-checked by three independent
routes (truncated diagonalization, coefficient recursion, generating
function).
"""

from .linalg import (
    DEFAULT_TOL,
    ConvergenceError,
    Eig2,
    SymTridiag,
    anticommutator,
    commutator,
    dagger,
    eig_2x2,
    eig_sym_tridiag,
    mat_mul,
    max_abs,
)
from .lee_model import (
    CoeffSequence,
    LeeParams,
    SpectrumReport,
    classify_balance,
    exact_spectrum,
    exact_spectrum_fraction,
    full_hamiltonian,
    generating_coeffs,
    norm_partial_sum,
    one_fermion_tridiag,
    recursion_coeffs,
    renormalized_mass,
    truncated_spectrum,
)
from .pt_algebra import (
    SymmetryData,
    SymmetryReport,
    cpt_adjoint,
    cpt_inner,
    is_nilpotent,
    pt_adjoint,
    pt_inner,
    validate_symmetry,
)
from .verify import VerifyReport, run_family

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "ConvergenceError",
    "Eig2",
    "SymTridiag",
    "anticommutator",
    "commutator",
    "dagger",
    "eig_2x2",
    "eig_sym_tridiag",
    "mat_mul",
    "max_abs",
    "CoeffSequence",
    "LeeParams",
    "SpectrumReport",
    "classify_balance",
    "exact_spectrum",
    "exact_spectrum_fraction",
    "full_hamiltonian",
    "generating_coeffs",
    "norm_partial_sum",
    "one_fermion_tridiag",
    "recursion_coeffs",
    "renormalized_mass",
    "truncated_spectrum",
    "SymmetryData",
    "SymmetryReport",
    "cpt_adjoint",
    "cpt_inner",
    "is_nilpotent",
    "pt_adjoint",
    "pt_inner",
    "validate_symmetry",
    "VerifyReport",
    "run_family",
    "__version__",
]
