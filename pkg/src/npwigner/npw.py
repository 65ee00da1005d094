"""Number-phase Wigner function: quantizer, forward map, marginals, Weyl quantization.

The forward map and quantizer live on a uniform phase grid. Because rho_W(phi, n)
is a trigonometric polynomial of degree <= dim-1 in phi, every integral here is
evaluated exactly (to roundoff) by the grid quadrature once M >= 2*dim - 1; the
transforms are therefore done in Fourier space per Fock column, never by
assembling quantizer matrices node by node.
"""

from __future__ import annotations

import warnings
from dataclasses import InitVar, dataclass, field

import numpy as np

from .config import GridCompatibilityError, NumericValidationError
from .fock import DensityMatrix, Truncation, as_dim, _frozen
from .grids import PhaseGrid
from .states import phase_state_amplitudes


@dataclass(frozen=True)
class NPWignerTable:
    """Samples v[j][n] = rho_W(phi_j, n) on grid x Fock index (probability per radian).

    norm_tol bounds |w * sum(values) - 1|; the default suits exact-route tables,
    quadrature-limited producers (the phase-space bridges) pass a looser bound.
    """

    grid: PhaseGrid
    values: np.ndarray = field(repr=False)
    norm_tol: InitVar[float] = 1e-10

    def __post_init__(self, norm_tol: float) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != self.grid.m_points or v.shape[1] < 1:
            raise NumericValidationError(
                f"expected real values of shape ({self.grid.m_points}, dim), got {np.shape(self.values)}"
            )
        if not np.all(np.isfinite(v)):
            raise NumericValidationError("table contains non-finite values")
        self.grid.require_resolves(v.shape[1])
        norm = self.grid.weight * v.sum()
        if abs(norm - 1.0) > norm_tol:
            raise NumericValidationError(
                f"table normalization {norm:.17g} deviates from 1 beyond {norm_tol:.3e}"
            )
        object.__setattr__(self, "values", _frozen(v.copy()))

    @property
    def dim(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class ClassicalSymbol:
    """Samples f(phi_j, n) of a classical symbol on grid x Fock index."""

    grid: PhaseGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.values)
        if not np.iscomplexobj(v):
            v = v.astype(float)
        if v.ndim != 2 or v.shape[0] != self.grid.m_points or v.shape[1] < 1:
            raise NumericValidationError(
                f"expected values of shape ({self.grid.m_points}, dim), got {np.shape(self.values)}"
            )
        if not np.all(np.isfinite(v.real)) or (np.iscomplexobj(v) and not np.all(np.isfinite(v.imag))):
            raise NumericValidationError("symbol contains non-finite values")
        object.__setattr__(self, "values", _frozen(v.copy()))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @classmethod
    def from_function(cls, grid: PhaseGrid, t: Truncation | int, fn) -> "ClassicalSymbol":
        """Sample fn(phi, n) with phi a column of nodes and n a row of Fock indices."""
        dim = as_dim(t)
        phi = grid.nodes[:, None]
        n = np.arange(dim)[None, :]
        values = np.broadcast_to(fn(phi, n), (grid.m_points, dim))
        return cls(grid, np.array(values))


def quantizer_matrix(t: Truncation | int, phi: float, n: int) -> np.ndarray:
    """Quantizer Omega(phi, n) = pi {|n><n|phi><phi| + |phi><phi|n><n|}, Hermitian by construction."""
    dim = as_dim(t)
    if int(n) != n or not 0 <= n < dim:
        raise NumericValidationError(f"Fock index {n} outside 0..{dim - 1}")
    ov = phase_state_amplitudes(dim, phi)
    row = np.pi * ov[int(n)] * ov.conj()
    m = np.zeros((dim, dim), dtype=complex)
    m[int(n), :] += row
    m[:, int(n)] += row.conj()
    return _frozen(m)


def npw_from_density(rho: DensityMatrix, grid: PhaseGrid | None = None, *,
                     norm_tol: float = 1e-10) -> NPWignerTable:
    """Forward map v[j][n] = (1/2pi) Re sum_k rho_kn e^{i(n-k)phi_j}.

    Column n is the inverse DFT of the n-th column of rho placed at modes n - k;
    on the nodes phi_j = -pi + 2 pi j / M this is an FFT with (-1)^m twiddles.
    """
    dim = rho.dim
    if grid is None:
        grid = PhaseGrid.default_for(dim)
    grid.require_resolves(dim)
    m_points = grid.m_points
    n_idx = np.arange(dim)
    modes = n_idx[None, :] - n_idx[:, None]  # (k, n) -> n - k
    signs = np.where(modes % 2 == 0, 1.0, -1.0)
    h = np.zeros((m_points, dim), dtype=complex)
    h[modes % m_points, np.broadcast_to(n_idx[None, :], (dim, dim))] = signs * rho.matrix
    values = np.fft.ifft(h, axis=0).real * (m_points / (2.0 * np.pi))
    return NPWignerTable(grid, values, norm_tol)


def marginal_number(table: NPWignerTable) -> np.ndarray:
    """Photon-number distribution: out[n] = w sum_j v[j][n] = <n|rho|n>."""
    return table.grid.weight * table.values.sum(axis=0)


def marginal_phase(table: NPWignerTable) -> np.ndarray:
    """Phase distribution: out[j] = sum_n v[j][n] = <phi_j|rho|phi_j>."""
    return table.values.sum(axis=1)


def expectation_symbol(table: NPWignerTable, f: ClassicalSymbol) -> complex | float:
    """<f-hat> = w sum_{j,n} f[j][n] v[j][n], the phase-space side of the trace pairing."""
    if f.grid != table.grid or f.dim != table.dim:
        raise GridCompatibilityError(
            f"symbol on (M={f.grid.m_points}, dim={f.dim}) does not match table "
            f"(M={table.grid.m_points}, dim={table.dim})"
        )
    total = table.grid.weight * np.sum(f.values * table.values)
    if np.iscomplexobj(f.values):
        return complex(total)
    return float(total)


def weyl_quantize(f: ClassicalSymbol) -> np.ndarray:
    """Operator of a symbol: <j|f-hat|k> = (w/4pi) sum_q (f[q][j] + f[q][k]) e^{i(j-k)phi_q}.

    Assembled from per-column spectra, so a phi-independent symbol yields an
    exactly diagonal matrix. Real symbols map to Hermitian matrices.
    """
    dim = f.dim
    m_points = f.grid.m_points
    f.grid.require_resolves(dim)
    spectra = np.fft.ifft(f.values, axis=0)  # spectra[m, n] = (1/M) sum_q f[q][n] w^{qm}
    _warn_if_aliased(spectra, dim)
    j = np.arange(dim)
    diff = j[:, None] - j[None, :]
    idx = diff % m_points
    signs = np.where(diff % 2 == 0, 1.0, -1.0)
    out = 0.5 * signs * (spectra[idx, j[:, None]] + spectra[idx, j[None, :]])
    return _frozen(out)


def _warn_if_aliased(spectra: np.ndarray, dim: int) -> None:
    """Warn when the symbol has significant energy within dim modes of Nyquist."""
    m_points = spectra.shape[0]
    m = np.arange(m_points)
    circular = np.minimum(m, m_points - m)
    guard = circular > max(0, m_points // 2 - dim)
    if not np.any(guard):
        return
    power = np.abs(spectra) ** 2
    total = power.sum()
    if total > 0.0 and power[guard].sum() / total >= 1e-8:
        warnings.warn(
            "symbol has significant energy near the Nyquist band; quadrature may alias "
            "(refine the phase grid or band-limit the symbol)",
            stacklevel=3,
        )
