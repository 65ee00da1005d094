"""Susskind-Glogower phase operators and quantization of phase-only functions.

The one-sided shifts e^{+i phi-hat} (lowering) and e^{-i phi-hat} (raising) are
exact on the truncated space except where a ladder step crosses the top level;
identity tests crop to the valid block with `top_left_block`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import GridCompatibilityError, NumericValidationError
from .fock import Truncation, as_dim, _frozen
from .grids import PhaseGrid


def sg_lower(t: Truncation | int) -> np.ndarray:
    """One-sided shift down: entry[n][n+1] = 1, so the matrix sends |n> to |n-1>."""
    dim = as_dim(t)
    e = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim - 1)
    e[idx, idx + 1] = 1.0
    return _frozen(e)


def sg_raise(t: Truncation | int) -> np.ndarray:
    """Adjoint of sg_lower: entry[n+1][n] = 1."""
    return _frozen(sg_lower(t).conj().T.copy())


def sg_power_product(t: Truncation | int, k: int, m: int) -> np.ndarray:
    """Literal matrix product (sg_lower)^k (sg_raise)^m.

    Equals the pure shift by |k - m| on the top-left (D - max(k, m)) block; the
    remaining rows and columns carry truncation artifacts. Requires k + m < D so
    a valid block remains.
    """
    dim = as_dim(t)
    if k < 0 or m < 0 or int(k) != k or int(m) != m:
        raise NumericValidationError(f"powers must be nonnegative integers, got k={k}, m={m}")
    if k + m >= dim:
        raise NumericValidationError(
            f"sg_power_product with k+m = {k + m} >= dim = {dim}: no valid block remains"
        )
    prod = np.linalg.matrix_power(sg_lower(dim), int(k)) @ np.linalg.matrix_power(sg_raise(dim), int(m))
    return _frozen(prod)


def top_left_block(matrix: np.ndarray, depth: int) -> np.ndarray:
    """Crop the top-left (D - depth) x (D - depth) block.

    Identities that move `depth` ladder steps through the truncation edge are
    exact only there.
    """
    if depth < 0:
        raise NumericValidationError(f"block depth must be nonnegative, got {depth}")
    d = matrix.shape[0] - depth
    if d <= 0:
        raise NumericValidationError(f"block depth {depth} leaves no rows of a {matrix.shape} matrix")
    return matrix[:d, :d]


@dataclass(frozen=True)
class FourierSymbol:
    """Fourier coefficients f~_m of a 2*pi-periodic function, m = -m_max .. m_max ascending."""

    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise NumericValidationError(
                f"coefficients must be a vector of odd length 2*m_max + 1, got shape {c.shape}"
            )
        if not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise NumericValidationError("Fourier coefficients must be finite")
        object.__setattr__(self, "coefficients", _frozen(c.copy()))

    @property
    def m_max(self) -> int:
        return (self.coefficients.size - 1) // 2

    def coefficient(self, m: int) -> complex:
        """f~_m, zero outside the stored band."""
        if abs(m) > self.m_max:
            return 0.0 + 0.0j
        return complex(self.coefficients[m + self.m_max])

    @classmethod
    def from_samples(cls, grid: PhaseGrid, samples: np.ndarray, m_max: int) -> "FourierSymbol":
        """Extract f~_m = (1/2pi) integral f(phi) e^{-i m phi} dphi by DFT on the grid."""
        samples = np.asarray(samples, dtype=complex)
        if samples.shape != (grid.m_points,):
            raise NumericValidationError(
                f"expected {grid.m_points} samples matching the grid, got shape {samples.shape}"
            )
        if 2 * m_max + 1 > grid.m_points:
            raise GridCompatibilityError(
                f"cannot extract modes up to {m_max} from {grid.m_points} samples"
            )
        spectrum = np.fft.fft(samples) / grid.m_points
        m = np.arange(-m_max, m_max + 1)
        # On nodes phi_j = -pi + 2 pi j / M: e^{-i m phi_j} = (-1)^m e^{-2 pi i m j / M}.
        coef = np.power(-1.0, m) * spectrum[m % grid.m_points]
        return cls(coef)

    def sample(self, grid: PhaseGrid) -> np.ndarray:
        """Evaluate f(phi) = sum_m f~_m e^{i m phi} on the grid nodes."""
        phi = grid.nodes
        m = np.arange(-self.m_max, self.m_max + 1)
        return (self.coefficients[None, :] * np.exp(1j * np.outer(phi, m))).sum(axis=1)


def quantize_phase_function(t: Truncation | int,
                            f: FourierSymbol | np.ndarray,
                            grid: PhaseGrid | None = None) -> np.ndarray:
    """Operator of a phase-only function: <k|f-hat|n> = f~_{n-k}.

    `f` is either a FourierSymbol or an array of samples on `grid`; sampled
    input requires M >= 2*dim - 1 so no mode in the operator band aliases.
    The result is Toeplitz; real f yields a Hermitian matrix.
    """
    dim = as_dim(t)
    if not isinstance(f, FourierSymbol):
        if grid is None:
            raise NumericValidationError("sampled input requires the phase grid it was taken on")
        grid.require_resolves(dim)
        f = FourierSymbol.from_samples(grid, np.asarray(f), dim - 1)
    band = min(f.m_max, dim - 1)
    # padded[m + dim - 1] = f~_m for |m| <= dim - 1
    padded = np.zeros(2 * dim - 1, dtype=complex)
    padded[dim - 1 - band:dim + band] = f.coefficients[f.m_max - band:f.m_max + band + 1]
    k = np.arange(dim)
    return _frozen(padded[(k[None, :] - k[:, None]) + dim - 1])
