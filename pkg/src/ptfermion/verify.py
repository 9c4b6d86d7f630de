"""Seeded randomized verification of the closed-form operator identities.

Each suite draws parameters from the documented ranges (2x2: b, c uniform
in [-5, 5] with b*c > 0 rejected; 4x4: real/imaginary parts uniform in
[-2, 2]), evaluates every identity as a residual in the max-entry norm,
and reports the worst residual seen per identity.  All draws come from a
single ``random.Random(seed)`` stream, so a report is reproducible from
(family, trials, seed) alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

import numpy as np

from . import pt_algebra, rep2, rep4
from .linalg import DEFAULT_TOL, anticommutator, commutator, identity, max_abs
from .pt_algebra import CheckResult

FAMILIES = ("rep2", "rep4-12", "rep4-block")


@dataclass(frozen=True)
class VerifyReport:
    family: str
    trials: int
    seed: int
    tolerance: float
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def residuals(self) -> dict[str, float]:
        return {c.name: c.residual for c in self.checks}


class _Worst:
    """Track the worst residual per named identity, in insertion order."""

    def __init__(self):
        self._data: dict[str, float] = {}

    def update(self, name: str, residual: float) -> None:
        self._data[name] = max(self._data.get(name, 0.0), float(residual))

    def report(self, family: str, trials: int, seed: int, tol: float) -> VerifyReport:
        checks = tuple(
            CheckResult(name, res, tol) for name, res in self._data.items()
        )
        return VerifyReport(family, trials, seed, tol, checks)


def _draw_rep2(rng: Random) -> rep2.Rep2Params:
    while True:
        b = rng.uniform(-5.0, 5.0)
        c = rng.uniform(-5.0, 5.0)
        if b * c <= 0.0:
            return rep2.Rep2Params(b=b, c=c, a_sign=rng.choice((1, -1)))


def _draw_unbroken_ham(rng: Random) -> rep2.Ham2Params:
    return rep2.Ham2Params(
        alpha=rng.uniform(-5.0, 5.0),
        beta=rng.uniform(0.05, 5.0),
        gamma=rng.uniform(0.05, 5.0),
    )


def _rel_nilpotency(m: np.ndarray) -> float:
    return max_abs(m @ m) / max(1.0, max_abs(m) ** 2)


def verify_rep2(
    trials: int = 1000, seed: int = 0, tol: float = DEFAULT_TOL
) -> VerifyReport:
    """Randomized residuals for the 2x2 family and its Hamiltonian story."""
    rng = Random(seed)
    worst = _Worst()
    sym = rep2.standard_symmetry()
    eye = identity(2)

    for _ in range(trials):
        p = _draw_rep2(rng)
        em = rep2.eta(p)
        pm = rep2.eta_pt(p)
        worst.update("eta_nilpotent", _rel_nilpotency(em))
        worst.update("eta_pt_nilpotent", _rel_nilpotency(pm))
        worst.update(
            "eta_pt_matches_generic_adjoint",
            max_abs(pm - pt_algebra.pt_adjoint(em, sym)),
        )
        scalar = rep2.pt_anticommutator_scalar(p)
        worst.update(
            "pt_anticommutator_closed_form",
            max_abs(anticommutator(em, pm) - scalar * eye),
        )
        worst.update("pt_anticommutator_nonpositive", max(scalar, 0.0))
        if p.a != 0.0:
            en, pn = rep2.normalized_pair(p)
            worst.update(
                "normalized_pair_anticommutator",
                max_abs(anticommutator(en, pn) + eye),
            )
            ground, excited = rep2.states(p)
            scale = max(1.0, float(np.linalg.norm(ground)))
            worst.update("ground_annihilated", max_abs(em @ ground) / scale)
            worst.update(
                "excited_is_raised_ground",
                max_abs(pm @ ground - 2.0 * p.a * excited) / scale,
            )
            n_op = rep2.number_operator(en, pn)
            worst.update("number_kills_ground", max_abs(n_op @ ground) / scale)
            worst.update(
                "number_counts_excited", max_abs(n_op @ excited + excited) / scale
            )
            worst.update(
                "number_lowering_anticommutator",
                max_abs(anticommutator(n_op, en) + en),
            )
            worst.update(
                "number_raising_anticommutator",
                max_abs(anticommutator(n_op, pn) + pn),
            )

    for _ in range(trials):
        h = _draw_unbroken_ham(rng)
        ham = rep2.hamiltonian(h)
        sol = rep2.eigensystem(h)
        scale = max(1.0, max_abs(ham))
        worst.update(
            "eigenvector_residual",
            max(
                max_abs(ham @ sol.v_plus - sol.lam_plus * sol.v_plus),
                max_abs(ham @ sol.v_minus - sol.lam_minus * sol.v_minus),
            )
            / scale,
        )
        worst.update(
            "pt_norms",
            max(
                abs(pt_algebra.pt_inner(sol.v_plus, sol.v_plus, sym) - 1.0),
                abs(pt_algebra.pt_inner(sol.v_minus, sol.v_minus, sym) + 1.0),
                abs(pt_algebra.pt_inner(sol.v_plus, sol.v_minus, sym)),
            ),
        )
        k = rep2.c_matrix(h)
        worst.update("k_squares_to_identity", max_abs(k @ k - eye))
        worst.update("k_commutes_with_hamiltonian", max_abs(commutator(k, ham)))
        worst.update(
            "k_grades_eigenstates",
            max(
                max_abs(k @ sol.v_plus - sol.v_plus),
                max_abs(k @ sol.v_minus + sol.v_minus),
            ),
        )
        em = rep2.eta_from_hamiltonian(h)
        worst.update("ladder_nilpotent", _rel_nilpotency(em))
        worst.update(
            "ladder_annihilates_lower",
            max(max_abs(em @ sol.v_minus), max_abs(em @ sol.v_plus - sol.v_minus)),
        )
        sym_k = rep2.standard_symmetry(k)
        ecpt = pt_algebra.cpt_adjoint(em, sym_k)
        worst.update(
            "cpt_anticommutator_identity", max_abs(anticommutator(em, ecpt) - eye)
        )
        worst.update(
            "cpt_norms",
            max(
                abs(pt_algebra.cpt_inner(sol.v_plus, sol.v_plus, sym_k) - 1.0),
                abs(pt_algebra.cpt_inner(sol.v_minus, sol.v_minus, sym_k) - 1.0),
                abs(pt_algebra.cpt_inner(sol.v_plus, sol.v_minus, sym_k)),
            ),
        )
        worst.update(
            "hamiltonian_from_ladder",
            max_abs(rep2.hamiltonian_from_ladder(h) - ham) / scale,
        )

    for _ in range(trials):
        p = _draw_rep2(rng)
        g_c = rng.uniform(-0.9, 0.9)
        a_c = rng.choice((1, -1)) * rng.uniform(0.1, 5.0)
        b_c = (1.0 - g_c * g_c) / a_c
        k_par = rep2.Rep2CParams(g_c=g_c, a_c=a_c, b_c=b_c)
        sym_k = rep2.standard_symmetry(rep2.c_matrix_general(k_par))
        em = rep2.eta(p)
        ecpt = pt_algebra.cpt_adjoint(em, sym_k)
        worst.update(
            "general_cpt_anticommutator_closed_form",
            max_abs(
                anticommutator(em, ecpt)
                - rep2.cpt_anticommutator_scalar(p, k_par) * eye
            ),
        )

    return worst.report("rep2", trials, seed, tol)


def _draw_complex(rng: Random, lim: float = 2.0) -> complex:
    return complex(rng.uniform(-lim, lim), rng.uniform(-lim, lim))


def verify_rep4_twelve(
    trials: int = 1000, seed: int = 0, tol: float = DEFAULT_TOL
) -> VerifyReport:
    """Randomized residuals for the twelve-parameter (Grassmann) family."""
    rng = Random(seed)
    worst = _Worst()
    sym = rep4.standard_symmetry()

    for _ in range(trials):
        p = rep4.Rep4TwelveParams(
            *(_draw_complex(rng) for _ in range(6))
        )
        em = rep4.eta_twelve(p)
        pm = pt_algebra.pt_adjoint(em, sym)
        worst.update("eta_nilpotent", _rel_nilpotency(em))
        worst.update("eta_pt_nilpotent", _rel_nilpotency(pm))
        worst.update(
            "anticommutator_block_closed_form",
            rep4.anticommutator_blocks(p).max_residual,
        )

    for _ in range(trials):
        p = rep4.sample_grassmann(rng)
        em = rep4.eta_twelve(p)
        pm = pt_algebra.pt_adjoint(em, sym)
        worst.update(
            "grassmann_sample_anticommutator_vanishes",
            max_abs(anticommutator(em, pm)),
        )
        worst.update(
            "grassmann_sample_relations",
            0.0 if rep4.grassmann_relations_hold(p) else 1.0,
        )

    em = rep4.GRASSMANN_EXAMPLE
    pm = pt_algebra.pt_adjoint(em, sym)
    worst.update("explicit_example_nilpotent", max_abs(em @ em))
    worst.update(
        "explicit_example_anticommutator_vanishes",
        max_abs(anticommutator(em, pm)),
    )
    worst.update(
        "explicit_example_matches_parameters",
        max_abs(em - rep4.eta_twelve(rep4.GRASSMANN_EXAMPLE_PARAMS)),
    )

    return worst.report("rep4-12", trials, seed, tol)


def draw_block_params(rng: Random) -> rep4.Rep4BlockParams:
    """Valid block-family draw: alpha and beta get opposite signs so that
    f is real."""
    alpha = rng.choice((1, -1)) * rng.uniform(0.05, 2.0)
    beta = -np.sign(alpha) * rng.uniform(0.05, 2.0)
    return rep4.Rep4BlockParams(
        b=_draw_complex(rng),
        c=_draw_complex(rng),
        alpha=alpha,
        beta=float(beta),
        f_sign=rng.choice((1, -1)),
    )


def verify_rep4_block(
    trials: int = 1000, seed: int = 0, tol: float = DEFAULT_TOL
) -> VerifyReport:
    """Randomized residuals for the 4x4 block family and its K matrix."""
    rng = Random(seed)
    worst = _Worst()
    sym = rep4.standard_symmetry()
    eye = identity(4)

    for _ in range(trials):
        p = draw_block_params(rng)
        em = rep4.eta_block(p)
        pm = pt_algebra.pt_adjoint(em, sym)
        worst.update("eta_nilpotent", _rel_nilpotency(em))
        worst.update("eta_pt_nilpotent", _rel_nilpotency(pm))
        scalar = rep4.pt_anticommutator_scalar(p)
        worst.update(
            "pt_anticommutator_closed_form",
            max_abs(anticommutator(em, pm) - scalar * eye),
        )
        worst.update("pt_anticommutator_nonpositive", max(scalar, 0.0))

        k_par = rep4.Rep4CParams.from_gamma(
            rng.uniform(-2.0, 2.0), p, g_sign=rng.choice((1, -1))
        )
        k = rep4.c_matrix(p, k_par)
        worst.update("k_squares_to_identity", max_abs(k @ k - eye))
        worst.update("k_constraint", k_par.constraint_residual(p))
        worst.update(
            "k_commutes_with_pt",
            max_abs(k @ sym.s @ sym.z - sym.s @ sym.z @ k.conj()),
        )
        sym_k = rep4.standard_symmetry(k)
        ecpt = pt_algebra.cpt_adjoint(em, sym_k)
        worst.update(
            "cpt_adjoint_closed_form",
            max_abs(rep4.cpt_adjoint_closed(p, k_par) - ecpt),
        )
        cpt_scalar = rep4.cpt_anticommutator_scalar(p, k_par)
        worst.update(
            "cpt_anticommutator_closed_form",
            max_abs(anticommutator(em, ecpt) - cpt_scalar * eye),
        )
        worst.update("cpt_anticommutator_nonnegative", max(-cpt_scalar, 0.0))

        ground, excited = rep4.states(p)
        scale = max(1.0, float(np.linalg.norm(ground)))
        worst.update("ground_annihilated", max_abs(em @ ground) / scale)
        worst.update(
            "excited_is_raised_ground",
            max_abs(pm @ ground + (p.alpha + p.beta) * excited) / scale,
        )
        n_op = pm @ em
        norm_sq = (p.alpha + p.beta) ** 2 * p.pair_norm_sq
        worst.update("number_kills_ground", max_abs(n_op @ ground) / scale)
        worst.update(
            "number_counts_excited",
            max_abs(n_op @ excited + norm_sq * excited)
            / max(scale, norm_sq),
        )

    return worst.report("rep4-block", trials, seed, tol)


def run_family(
    family: str, trials: int, seed: int, tol: float = DEFAULT_TOL
) -> VerifyReport:
    if family == "rep2":
        return verify_rep2(trials, seed, tol)
    if family == "rep4-12":
        return verify_rep4_twelve(trials, seed, tol)
    if family == "rep4-block":
        return verify_rep4_block(trials, seed, tol)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
