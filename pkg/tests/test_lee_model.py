import itertools
import math

import numpy as np
import pytest

from ptfermion import lee_model, rep2
from ptfermion.lee_model import (
    BALANCE_INCONCLUSIVE,
    BALANCE_NON_NORMALIZABLE,
    BALANCE_NORMALIZABLE,
    CoeffSequence,
    LeeParams,
)
from ptfermion.linalg import max_abs

CANONICAL = LeeParams(m=1.0, M=1.0, g=0.5, n_max=64)
GRID = [
    LeeParams(m=m, M=big_m, g=g, n_max=64)
    for m, big_m, g in itertools.product((0.5, 1.0, 2.0), (0.0, 1.0, 5.0), (0.1, 0.5, 1.0))
]


class TestExactSpectrum:
    def test_canonical_ground_level(self):
        assert lee_model.exact_spectrum(CANONICAL, 0) == pytest.approx(0.75)

    def test_free_theory(self):
        p = LeeParams(m=1.5, M=2.0, g=0.0, n_max=4)
        for n in range(5):
            assert lee_model.exact_spectrum(p, n) == pytest.approx(n * 1.5 + 2.0)

    def test_strong_coupling_level(self):
        p = LeeParams(m=2.0, M=0.0, g=2.0, n_max=4)
        assert lee_model.exact_spectrum(p, 3) == pytest.approx(4.0)

    def test_rejects_negative_level(self):
        with pytest.raises(ValueError):
            lee_model.exact_spectrum(CANONICAL, -1)

    def test_fraction_form_matches_float(self):
        for p in GRID[:9]:
            for n in range(4):
                assert float(
                    lee_model.exact_spectrum_fraction(p, n)
                ) == pytest.approx(lee_model.exact_spectrum(p, n), abs=1e-15)


class TestRenormalizedMass:
    def test_canonical(self):
        assert lee_model.renormalized_mass(CANONICAL) == pytest.approx(0.75)

    def test_free_theory(self):
        assert lee_model.renormalized_mass(
            LeeParams(m=1.0, M=3.0, g=0.0, n_max=2)
        ) == pytest.approx(3.0)

    def test_shifted_value(self):
        assert lee_model.renormalized_mass(
            LeeParams(m=2.0, M=5.0, g=1.0, n_max=2)
        ) == pytest.approx(4.5)

    def test_always_below_bare_mass(self):
        for p in GRID:
            if p.g != 0.0:
                assert lee_model.renormalized_mass(p) < p.M


class TestOneFermionTridiag:
    def test_free_theory_is_diagonal(self):
        t = lee_model.one_fermion_tridiag(LeeParams(m=1.0, M=2.0, g=0.0, n_max=3))
        assert max_abs(t.offdiag) == 0.0
        assert max_abs(t.diag - np.array([2.0, 3.0, 4.0, 5.0])) == 0.0

    def test_canonical_small(self):
        t = lee_model.one_fermion_tridiag(LeeParams(m=1.0, M=1.0, g=0.5, n_max=2))
        assert max_abs(t.diag - np.array([1.0, 2.0, 3.0])) == 0.0
        assert max_abs(t.offdiag - np.array([0.5, 0.5 * math.sqrt(2)])) < 1e-15

    def test_dense_is_symmetric(self):
        t = lee_model.one_fermion_tridiag(CANONICAL)
        d = t.dense()
        assert max_abs(d - d.T) == 0.0


class TestFullHamiltonian:
    REP = rep2.Rep2Params(b=1.0, c=-1.0)

    def test_zero_fermion_block_is_free_boson(self):
        p = LeeParams(m=1.0, M=1.0, g=0.5, n_max=16)
        h = lee_model.full_hamiltonian(p, self.REP)
        dim = p.n_max + 1
        block0 = h[:dim, :dim]
        assert max_abs(block0 - np.diag(p.m * np.arange(dim))) == 0.0

    def test_one_fermion_block_matches_tridiag(self):
        p = LeeParams(m=1.0, M=1.0, g=0.5, n_max=16)
        h = lee_model.full_hamiltonian(p, self.REP)
        dim = p.n_max + 1
        block1 = h[dim:, dim:].real
        assert max_abs(block1 - lee_model.one_fermion_tridiag(p).dense()) < 1e-12

    def test_one_fermion_block_spectrum_matches(self):
        # block-diagonalization oracle: eigenvalues of the extracted block
        # against the dedicated tridiagonal solver
        p = LeeParams(m=1.0, M=1.0, g=0.5, n_max=16)
        h = lee_model.full_hamiltonian(p, self.REP)
        dim = p.n_max + 1
        block_vals = np.sort(np.linalg.eigvalsh(h[dim:, dim:].real))
        tridiag_vals = lee_model.eig_sym_tridiag(lee_model.one_fermion_tridiag(p))
        assert max_abs(block_vals - tridiag_vals) < 1e-12

    def test_sectors_do_not_couple(self):
        p = LeeParams(m=0.5, M=2.0, g=1.0, n_max=12)
        h = lee_model.full_hamiltonian(p, self.REP)
        dim = p.n_max + 1
        assert max_abs(h[:dim, dim:]) == 0.0
        assert max_abs(h[dim:, :dim]) == 0.0

    def test_free_theory_spectrum(self):
        p = LeeParams(m=1.0, M=0.25, g=0.0, n_max=10)
        h = lee_model.full_hamiltonian(p, self.REP)
        vals = np.sort(np.linalg.eigvalsh(h.real))
        expected = np.sort(
            np.concatenate(
                [p.m * np.arange(11), p.m * np.arange(11) + p.M]
            )
        )
        assert max_abs(vals - expected) < 1e-12

    def test_other_representations_agree(self):
        p = LeeParams(m=1.0, M=1.0, g=0.5, n_max=8)
        base = lee_model.full_hamiltonian(p, self.REP)
        other = lee_model.full_hamiltonian(p, rep2.Rep2Params(b=2.0, c=-0.125))
        assert max_abs(base - other) < 1e-12

    def test_grassmann_representation_rejected(self):
        with pytest.raises(ValueError):
            lee_model.full_hamiltonian(
                LeeParams(m=1.0, M=1.0, g=0.5, n_max=4),
                rep2.Rep2Params(b=1.0, c=0.0),
            )


class TestTruncatedSpectrum:
    def test_canonical_convergence(self):
        rep = lee_model.truncated_spectrum(CANONICAL)
        for n in range(6):
            assert rep.abs_errors[n] < 1e-8
        assert rep.converged_levels == rep.scored_levels

    def test_free_theory_is_exact(self):
        rep = lee_model.truncated_spectrum(LeeParams(m=1.0, M=1.0, g=0.0, n_max=32))
        assert rep.abs_errors.max() < 1e-12

    def test_monotone_in_truncation(self):
        # Rayleigh-Ritz monotonicity, up to a few ulps once a level has
        # converged to machine precision.
        floor = 5e-15
        for level in range(4):
            errors = []
            for n_max in (16, 32, 64):
                p = LeeParams(m=1.0, M=1.0, g=0.5, n_max=n_max)
                errors.append(lee_model.truncated_spectrum(p).abs_errors[level])
            assert errors[0] >= errors[1] - floor
            assert errors[1] >= errors[2] - floor

    def test_spacing_of_converged_levels(self):
        rep = lee_model.truncated_spectrum(CANONICAL)
        gaps = np.diff(rep.truncated[: rep.scored_levels])
        assert max_abs(gaps - CANONICAL.m) < 1e-8


class TestRecursionCoeffs:
    def test_ground_level_matches_exponential(self):
        seq = lee_model.recursion_coeffs(CANONICAL, 0.75, 16)
        for n, d in enumerate(seq.values):
            expected = (-0.5) ** n / math.factorial(n)
            assert d == pytest.approx(expected, rel=1e-9)

    def test_off_eigenvalue_tail_ratio(self):
        seq = lee_model.recursion_coeffs(CANONICAL, 0.75 + 0.3, 40)
        ratio = seq.values[-1] / seq.values[-2]
        assert abs(ratio) == pytest.approx(2.0, rel=0.1)
        assert ratio < 0.0

    def test_first_step(self):
        energy = 1.9
        seq = lee_model.recursion_coeffs(CANONICAL, energy, 2)
        assert seq.values[1] == pytest.approx((energy - CANONICAL.M) / CANONICAL.g)

    def test_rejects_zero_coupling(self):
        with pytest.raises(ValueError):
            lee_model.recursion_coeffs(
                LeeParams(m=1.0, M=1.0, g=0.0, n_max=2), 1.0, 8
            )

    def test_accepts_fraction_energy(self):
        p = LeeParams(m=1.0, M=1.0, g=0.1, n_max=2)
        energy = lee_model.exact_spectrum_fraction(p, 2)
        seq = lee_model.recursion_coeffs(p, energy, 12)
        assert all(math.isfinite(v) for v in seq.values)


class TestGeneratingCoeffs:
    def test_ground_level(self):
        seq = lee_model.generating_coeffs(CANONICAL, 0, 16)
        for n, d in enumerate(seq.values):
            assert d == pytest.approx((-0.5) ** n / math.factorial(n), rel=1e-12)

    def test_first_excited_linear_coefficient(self):
        seq = lee_model.generating_coeffs(CANONICAL, 1, 4)
        assert seq.values[0] == 1.0
        assert seq.values[1] == pytest.approx(1.5)

    def test_free_limit(self):
        seq = lee_model.generating_coeffs(
            LeeParams(m=1.0, M=1.0, g=0.0, n_max=2), 0, 6
        )
        assert seq.values == (1.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    def test_free_limit_excited_rejected(self):
        with pytest.raises(ValueError):
            lee_model.generating_coeffs(LeeParams(m=1.0, M=1.0, g=0.0, n_max=2), 1, 6)

    def test_matches_recursion_termwise(self):
        for level in range(4):
            energy = lee_model.exact_spectrum_fraction(CANONICAL, level)
            rec = lee_model.recursion_coeffs(CANONICAL, energy, 21)
            gen = lee_model.generating_coeffs(CANONICAL, level, 21)
            for x, y in zip(rec.values, gen.values):
                assert abs(x - y) <= 1e-9 * max(abs(x), abs(y), 1e-30)


class TestClassifyBalance:
    def test_eigenvalue_is_normalizable(self):
        seq = lee_model.recursion_coeffs(CANONICAL, 0.75, 24)
        assert lee_model.classify_balance(seq, CANONICAL) == BALANCE_NORMALIZABLE

    def test_off_eigenvalue_is_not(self):
        seq = lee_model.recursion_coeffs(CANONICAL, 0.75 + 0.3, 24)
        assert (
            lee_model.classify_balance(seq, CANONICAL) == BALANCE_NON_NORMALIZABLE
        )

    def test_zero_tail_inconclusive(self):
        seq = CoeffSequence(values=(1.0, 0.5) + (0.0,) * 14)
        assert lee_model.classify_balance(seq, CANONICAL) == BALANCE_INCONCLUSIVE

    def test_needs_enough_terms(self):
        with pytest.raises(ValueError):
            lee_model.classify_balance(CoeffSequence(values=(1.0,) * 5), CANONICAL)


class TestNormPartialSum:
    def test_converges_at_eigenvalue(self):
        seq = lee_model.recursion_coeffs(CANONICAL, 0.75, 40)
        sums = [lee_model.norm_partial_sum(seq, n) for n in range(25, 35)]
        increments = np.diff(sums)
        assert max(abs(i) for i in increments) < 1e-12

    def test_grows_off_eigenvalue(self):
        seq = lee_model.recursion_coeffs(CANONICAL, 0.75 + 0.3, 40)
        sums = [lee_model.norm_partial_sum(seq, n) for n in range(30, 40)]
        increments = np.diff(sums)
        assert all(increments[i + 1] > increments[i] > 0 for i in range(len(increments) - 2))

    def test_free_sequence(self):
        seq = CoeffSequence(values=(1.0, 0.0, 0.0, 0.0))
        assert lee_model.norm_partial_sum(seq, 3) == 1.0

    def test_overflow_flagged(self):
        seq = CoeffSequence(values=tuple(2.0**n for n in range(400)))
        with pytest.raises(OverflowError):
            lee_model.norm_partial_sum(seq, 399)

    def test_bounds_checked(self):
        seq = CoeffSequence(values=(1.0, 0.5))
        with pytest.raises(ValueError):
            lee_model.norm_partial_sum(seq, 5)


class TestThreeWayAgreement:
    def test_grid(self):
        # Truncated diagonalization, the exact formula, and both
        # coefficient routes must agree across the 27-point grid.
        for p in GRID:
            spectrum = lee_model.truncated_spectrum(p)
            for level in range(4):
                assert spectrum.abs_errors[level] < 1e-8, (p, level)
                energy = lee_model.exact_spectrum_fraction(p, level)
                rec = lee_model.recursion_coeffs(p, energy, 21)
                gen = lee_model.generating_coeffs(p, level, 21)
                for x, y in zip(rec.values, gen.values):
                    assert abs(x - y) <= 1e-8 * max(abs(x), abs(y), 1e-30), (p, level)

    def test_recursion_eigenvalue_consistency(self):
        # At E strictly between eigenvalues the tail must blow up
        # geometrically, pinning the spectrum to exactly the E_N family.
        p = CANONICAL
        for level in range(3):
            mid = lee_model.exact_spectrum(p, level) + 0.5 * p.m
            seq = lee_model.recursion_coeffs(p, mid, 24)
            assert lee_model.classify_balance(seq, p) == BALANCE_NON_NORMALIZABLE
