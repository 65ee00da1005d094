"""Reference states: closed-form amplitudes, tail policy, descriptor grammar."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npwigner import (CoherentPhaseParam, FormatError, NumericValidationError,
                      TruncationTailError, coherent_phase_state, coherent_state,
                      density_from_descriptor, number_state, phase_overlap,
                      phase_state_amplitudes, random_density, sg_lower,
                      thermal_density)

TWO_PI = 2.0 * np.pi


class TestPhaseOverlap:
    def test_vacuum_overlap_is_constant(self):
        assert phase_overlap(0, 1.3) == pytest.approx(1.0 / np.sqrt(TWO_PI), rel=1e-15)

    def test_general_overlap(self):
        n, phi = 3, 0.7
        expected = np.exp(1j * n * phi) / np.sqrt(TWO_PI)
        assert phase_overlap(n, phi) == pytest.approx(expected, rel=1e-15)

    def test_rejects_negative_or_fractional_index(self):
        with pytest.raises(NumericValidationError):
            phase_overlap(-1, 0.0)
        with pytest.raises(NumericValidationError):
            phase_overlap(1.5, 0.0)

    def test_amplitude_vector_matches_scalar_overlaps(self):
        phi = -2.1
        vec = phase_state_amplitudes(6, phi)
        for n in range(6):
            assert vec[n] == pytest.approx(phase_overlap(n, phi), rel=1e-15)


class TestNumberState:
    def test_basis_vector(self):
        psi = number_state(5, 3)
        expected = np.zeros(5, dtype=complex)
        expected[3] = 1.0
        assert np.array_equal(psi.amplitudes, expected)
        assert psi.tail_weight == 0.0

    @pytest.mark.parametrize("n", [-1, 5, 2.5])
    def test_rejects_out_of_range_index(self, n):
        with pytest.raises(NumericValidationError):
            number_state(5, n)


class TestCoherentState:
    def test_amplitudes_match_poisson_form(self):
        dim, alpha = 20, 0.9 + 0.4j
        psi = coherent_state(dim, alpha)
        expected = np.array([
            np.exp(-0.5 * abs(alpha) ** 2) * alpha ** n / math.sqrt(math.factorial(n))
            for n in range(dim)
        ])
        # Renormalization shifts by the (tiny) tail only.
        assert np.max(np.abs(psi.amplitudes - expected)) < 1e-12
        assert abs(np.vdot(psi.amplitudes, psi.amplitudes) - 1.0) < 1e-14

    def test_mean_photon_number(self):
        dim, alpha = 64, 1.3
        psi = coherent_state(dim, alpha)
        p = np.abs(psi.amplitudes) ** 2
        assert p @ np.arange(dim) == pytest.approx(abs(alpha) ** 2, abs=1e-10)

    def test_tail_gate(self):
        with pytest.raises(TruncationTailError, match="tail"):
            coherent_state(4, 2.0)
        psi = coherent_state(4, 2.0, allow_tail=True)
        assert psi.tail_weight > 1e-10
        assert abs(np.vdot(psi.amplitudes, psi.amplitudes) - 1.0) < 1e-14


class TestCoherentPhaseState:
    def test_amplitudes_are_geometric(self):
        dim = 20
        zeta = 0.5 * np.exp(0.4j)
        psi = coherent_phase_state(dim, zeta)
        expected = np.sqrt(1.0 - abs(zeta) ** 2) * zeta ** np.arange(dim)
        kept = float(np.vdot(expected, expected).real)
        assert np.max(np.abs(psi.amplitudes - expected / np.sqrt(kept))) < 1e-15

    def test_projector_entry_matches_closed_form(self):
        # (1 - |zeta|^2) |zeta|^{k+l} e^{i(k-l)arg zeta} at k = l = 0.
        rho = coherent_phase_state(64, 0.5).density()
        assert rho.matrix[0, 0].real == pytest.approx(0.75, abs=1e-12)

    def test_eigenvector_of_lowering_shift(self):
        dim = 12
        zeta = 0.6 * np.exp(-1.1j)
        c = coherent_phase_state(dim, zeta, allow_tail=True).amplitudes
        shifted = sg_lower(dim) @ c
        # Exact eigenrelation on all but the top component, which truncation clips.
        assert np.max(np.abs(shifted[:dim - 1] - zeta * c[:dim - 1])) < 1e-15
        assert shifted[dim - 1] == 0.0

    def test_rejects_modulus_at_or_above_one(self):
        with pytest.raises(NumericValidationError, match="zeta"):
            coherent_phase_state(8, 1.0)
        with pytest.raises(NumericValidationError, match="zeta"):
            CoherentPhaseParam(1.2 * np.exp(0.3j))

    def test_param_accessors(self):
        p = CoherentPhaseParam(0.5 * np.exp(0.25j))
        assert p.modulus == pytest.approx(0.5, rel=1e-15)
        assert p.phase == pytest.approx(0.25, rel=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(mod=st.floats(min_value=0.0, max_value=0.8),
           phase=st.floats(min_value=-np.pi, max_value=np.pi),
           dim=st.integers(min_value=2, max_value=32))
    def test_always_unit_norm(self, mod, phase, dim):
        psi = coherent_phase_state(dim, mod * np.exp(1j * phase), allow_tail=True)
        assert abs(np.vdot(psi.amplitudes, psi.amplitudes).real - 1.0) < 1e-12
        assert psi.tail_weight >= 0.0


class TestThermalDensity:
    def test_geometric_diagonal(self):
        dim, nbar = 24, 0.5
        rho = thermal_density(dim, nbar, allow_tail=True)
        q = nbar / (1.0 + nbar)
        p = q ** np.arange(dim) / (1.0 + nbar)
        p /= p.sum()
        assert np.max(np.abs(rho.matrix - np.diag(p))) < 1e-15
        assert rho.matrix.trace().real == pytest.approx(1.0, abs=1e-14)

    def test_zero_temperature_is_vacuum(self):
        rho = thermal_density(6, 0.0)
        assert np.array_equal(rho.matrix, np.diag([1.0, 0, 0, 0, 0, 0]).astype(complex))

    def test_rejects_negative_occupation(self):
        with pytest.raises(NumericValidationError):
            thermal_density(8, -0.1)

    def test_tail_gate(self):
        with pytest.raises(TruncationTailError):
            thermal_density(8, 3.0)
        rho = thermal_density(8, 3.0, allow_tail=True)
        assert rho.tail_weight > 1e-10


class TestDescriptorGrammar:
    def test_number(self):
        rho = density_from_descriptor(5, "number:2")
        assert np.array_equal(rho.matrix, number_state(5, 2).density().matrix)

    def test_coherent(self):
        rho = density_from_descriptor(32, "coherent:0.8,0.3")
        expected = coherent_state(32, 0.8 + 0.3j).density()
        assert np.array_equal(rho.matrix, expected.matrix)

    def test_cps(self):
        rho = density_from_descriptor(32, "cps:0.5,0.7")
        expected = coherent_phase_state(32, 0.5 * np.exp(0.7j)).density()
        assert np.array_equal(rho.matrix, expected.matrix)

    def test_thermal(self):
        rho = density_from_descriptor(16, "thermal:0.2")
        assert np.array_equal(rho.matrix, thermal_density(16, 0.2).matrix)

    def test_random_with_and_without_seed(self):
        assert np.array_equal(density_from_descriptor(8, "random:3").matrix,
                              random_density(8, 3).matrix)
        assert np.array_equal(density_from_descriptor(8, "random", seed=5).matrix,
                              random_density(8, 5).matrix)

    def test_whitespace_tolerant(self):
        density_from_descriptor(16, "  thermal: 0.1 ")

    @pytest.mark.parametrize("text", [
        "cps:0.5",              # missing argument
        "number:1.5",           # fractional index
        "coherent:a,b",         # not numbers
        "random:xyz",           # bad seed
        "unknown:1",            # unknown kind
        "",                     # empty
    ])
    def test_malformed_descriptors_are_format_errors(self, text):
        with pytest.raises(FormatError):
            density_from_descriptor(8, text)

    def test_inadmissible_numbers_are_numeric_errors(self):
        with pytest.raises(NumericValidationError):
            density_from_descriptor(8, "cps:1.1,0")
        with pytest.raises(NumericValidationError):
            density_from_descriptor(8, "thermal:-1")

    def test_tail_policy_passes_through(self):
        with pytest.raises(TruncationTailError):
            density_from_descriptor(4, "coherent:2,0")
        density_from_descriptor(4, "coherent:2,0", allow_tail=True)
