"""Number-phase Wigner functions on truncated Fock spaces.

Forward map rho -> rho_W(phi, n), exact density-matrix reconstruction from the
table, Susskind-Glogower phase algebra, generalized Weyl quantization, and
bridges to the Cahill-Glauber W^(s) family.
"""

from .cahill_glauber import (CGTable, SParameter, as_s, density_from_w_s,
                             gaussian_p_samples, laguerre_assoc, npw_from_p,
                             npw_from_w_s, t_matrix, t_matrix_element,
                             w_s_from_density)
from .config import (DEFAULT_TOLERANCES, FormatError, GridCompatibilityError,
                     InconsistentInputError, NumericValidationError,
                     Tolerances, TruncationTailError)
from .fock import (DensityMatrix, StateVector, Truncation, annihilation_matrix,
                   as_dim, creation_matrix, displacement_matrix, number_matrix,
                   random_density)
from .grids import PhaseGrid, PolarGrid
from .npw import (ClassicalSymbol, NPWignerTable, expectation_symbol,
                  marginal_number, marginal_phase, npw_from_density,
                  quantizer_matrix, weyl_quantize)
from .phase_ops import (FourierSymbol, quantize_phase_function, sg_lower,
                        sg_power_product, sg_raise, top_left_block)
from .reconstruct import (FourierLadder, assemble_density, fourier_coefficients,
                          ladder_closed_form, ladder_recursive,
                          reconstruct_density)
from .states import (CoherentPhaseParam, coherent_phase_state, coherent_state,
                     density_from_descriptor, number_state, phase_overlap,
                     phase_state_amplitudes, thermal_density)

__version__ = "0.1.0"

__all__ = [
    "CGTable", "ClassicalSymbol", "CoherentPhaseParam", "DEFAULT_TOLERANCES",
    "DensityMatrix", "FormatError", "FourierLadder", "FourierSymbol",
    "GridCompatibilityError", "InconsistentInputError", "NPWignerTable",
    "NumericValidationError", "PhaseGrid", "PolarGrid", "SParameter",
    "StateVector", "Tolerances", "Truncation", "TruncationTailError",
    "annihilation_matrix", "as_dim", "as_s", "assemble_density",
    "coherent_phase_state", "coherent_state", "creation_matrix",
    "density_from_descriptor", "density_from_w_s", "displacement_matrix",
    "expectation_symbol", "fourier_coefficients", "gaussian_p_samples",
    "ladder_closed_form",
    "ladder_recursive", "laguerre_assoc", "marginal_number", "marginal_phase",
    "npw_from_density", "npw_from_p", "npw_from_w_s", "number_matrix",
    "number_state", "phase_overlap", "phase_state_amplitudes",
    "quantize_phase_function", "quantizer_matrix", "random_density",
    "reconstruct_density", "sg_lower", "sg_power_product", "sg_raise",
    "t_matrix", "t_matrix_element", "thermal_density", "top_left_block",
    "w_s_from_density", "weyl_quantize",
]
