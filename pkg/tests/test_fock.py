"""Fock-space operators and validated state containers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from npwigner import (DensityMatrix, NumericValidationError, StateVector,
                      Truncation, annihilation_matrix, as_dim, coherent_state,
                      creation_matrix, displacement_matrix, number_matrix,
                      random_density)


class TestTruncation:
    def test_accepts_positive_integer(self):
        assert Truncation(5).dim == 5

    @pytest.mark.parametrize("bad", [0, -3, 2.5])
    def test_rejects_non_positive_or_fractional(self, bad):
        with pytest.raises(NumericValidationError):
            Truncation(bad)

    def test_as_dim_accepts_both_forms(self):
        assert as_dim(Truncation(7)) == 7
        assert as_dim(7) == 7


class TestLadderOperators:
    def test_annihilation_entries(self):
        a = annihilation_matrix(4)
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 1] = np.sqrt(1.0)
        expected[1, 2] = np.sqrt(2.0)
        expected[2, 3] = np.sqrt(3.0)
        assert np.array_equal(a, expected)

    def test_action_on_number_states(self):
        a = annihilation_matrix(6)
        for n in range(1, 6):
            e_n = np.zeros(6)
            e_n[n] = 1.0
            out = a @ e_n
            expected = np.zeros(6, dtype=complex)
            expected[n - 1] = np.sqrt(n)
            assert np.array_equal(out, expected)
        assert np.array_equal(a @ np.eye(6)[0], np.zeros(6))

    def test_creation_is_adjoint(self):
        a = annihilation_matrix(8)
        assert np.array_equal(creation_matrix(8), a.conj().T)

    def test_number_matrix(self):
        n = number_matrix(5)
        assert np.array_equal(n, np.diag(np.arange(5.0)).astype(complex))

    def test_commutator_with_truncation_defect(self):
        # [a, a^dag] = 1 everywhere except the top level, which carries -(D-1).
        dim = 9
        a = annihilation_matrix(dim)
        comm = a @ a.conj().T - a.conj().T @ a
        expected = np.eye(dim, dtype=complex)
        expected[-1, -1] = -(dim - 1)
        assert np.max(np.abs(comm - expected)) < 16 * np.finfo(float).eps * dim

    def test_number_from_ladders(self):
        dim = 7
        a = annihilation_matrix(dim)
        assert np.max(np.abs(a.conj().T @ a - number_matrix(dim))) < 1e-14

    def test_matrices_are_read_only(self):
        a = annihilation_matrix(3)
        with pytest.raises(ValueError):
            a[0, 0] = 1.0


class TestDisplacement:
    def test_matches_matrix_exponential(self):
        dim, xi = 24, 0.3 + 0.2j
        a = annihilation_matrix(dim)
        expected = expm(xi * a.conj().T - np.conj(xi) * a)
        assert np.max(np.abs(displacement_matrix(dim, xi) - expected)) < 1e-12

    def test_unitary(self):
        d = displacement_matrix(16, 0.7 - 0.4j)
        assert np.max(np.abs(d @ d.conj().T - np.eye(16))) < 1e-12

    def test_generates_coherent_state_from_vacuum(self):
        dim, alpha = 32, 0.8
        column = displacement_matrix(dim, alpha)[:, 0]
        expected = coherent_state(dim, alpha).amplitudes
        assert np.max(np.abs(column - expected)) < 1e-10

    def test_zero_displacement_is_identity(self):
        assert np.max(np.abs(displacement_matrix(6, 0.0) - np.eye(6))) < 1e-14

    def test_warns_when_displacement_outgrows_space(self):
        with pytest.warns(UserWarning, match="truncation artifacts"):
            displacement_matrix(4, 2.0)


class TestDensityMatrix:
    def test_from_matrix_accepts_valid(self):
        rho = DensityMatrix.from_matrix(np.diag([0.5, 0.5]).astype(complex))
        assert rho.dim == 2
        assert rho.truncation == Truncation(2)
        assert rho.tail_weight == 0.0

    def test_rejects_non_square(self):
        with pytest.raises(NumericValidationError, match="square"):
            DensityMatrix(np.zeros((2, 3)))

    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.3], [0.0, 0.5]], dtype=complex)
        with pytest.raises(NumericValidationError, match="Hermitian"):
            DensityMatrix.from_matrix(m)

    def test_rejects_wrong_trace(self):
        with pytest.raises(NumericValidationError, match="trace"):
            DensityMatrix.from_matrix(np.diag([0.7, 0.7]).astype(complex))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NumericValidationError, match="eigenvalue"):
            DensityMatrix.from_matrix(np.diag([1.5, -0.5]).astype(complex))

    def test_rejects_non_finite(self):
        m = np.diag([np.nan, 1.0]).astype(complex)
        with pytest.raises(NumericValidationError, match="finite"):
            DensityMatrix.from_matrix(m)

    def test_tolerance_overrides(self):
        m = np.diag([1.05, -0.05]).astype(complex)
        from npwigner import DEFAULT_TOLERANCES
        loose = DEFAULT_TOLERANCES.with_overrides(trace=0.1, psd=0.1)
        DensityMatrix.from_matrix(m, tolerances=loose)
        with pytest.raises(NumericValidationError):
            DensityMatrix.from_matrix(m)

    def test_direct_constructor_skips_numeric_validation(self):
        # Plumbing for fault injection: shape is checked, invariants are not.
        m = np.diag([2.0, -1.0]).astype(complex)
        rho = DensityMatrix(m)
        with pytest.raises(NumericValidationError):
            rho.validate()

    def test_matrix_is_read_only_copy(self):
        src = np.diag([0.5, 0.5]).astype(complex)
        rho = DensityMatrix.from_matrix(src)
        src[0, 0] = 99.0
        assert rho.matrix[0, 0] == 0.5
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestStateVector:
    def test_norm_gate(self):
        StateVector.from_amplitudes(np.array([1.0, 0.0], dtype=complex))
        with pytest.raises(NumericValidationError, match="norm"):
            StateVector.from_amplitudes(np.array([1.0, 0.5], dtype=complex))

    def test_rejects_non_vector(self):
        with pytest.raises(NumericValidationError):
            StateVector(np.zeros((2, 2)))

    def test_density_outer_product(self):
        v = np.array([np.sqrt(0.25), np.sqrt(0.75) * 1j], dtype=complex)
        psi = StateVector.from_amplitudes(v, tail_weight=1e-12)
        rho = psi.density()
        assert np.array_equal(rho.matrix, np.outer(v, v.conj()))
        assert rho.tail_weight == 1e-12


class TestRandomDensity:
    def test_seeded_and_reproducible(self):
        a = random_density(8, seed=3)
        b = random_density(8, seed=3)
        c = random_density(8, seed=4)
        assert np.array_equal(a.matrix, b.matrix)
        assert not np.array_equal(a.matrix, c.matrix)

    @settings(max_examples=25, deadline=None)
    @given(dim=st.integers(min_value=1, max_value=24),
           seed=st.integers(min_value=0, max_value=2**31 - 1))
    def test_always_a_valid_density(self, dim, seed):
        random_density(dim, seed).validate()
