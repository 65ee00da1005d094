"""Cahill-Glauber s-parametrized functions W^(s) and their bridges to rho_W.

The workhorse is the matrix element of the operator kernel T^(-s)(alpha): for
alpha = r e^{i gamma} it factors into a real radial block times e^{-i(k-j)gamma},
so every map here contracts radial blocks against angular Fourier modes instead
of evaluating kernels per node. All magnitude factors are assembled in log space
and exponentiated once; associated Laguerre values come from the three-term
recurrence in the degree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .config import (DEFAULT_TOLERANCES, GridCompatibilityError,
                     NumericValidationError, Tolerances)
from .fock import DensityMatrix, Truncation, as_dim, _frozen
from .grids import PhaseGrid, PolarGrid
from .npw import NPWignerTable, npw_from_density

QUADRATURE_NORM_TOL = 1e-4


@dataclass(frozen=True)
class SParameter:
    """Ordering parameter s in [-1, 1]: -1 Husimi, 0 Wigner, 1 Glauber-Sudarshan."""

    s: float

    def __post_init__(self) -> None:
        s = float(self.s)
        if not np.isfinite(s) or not -1.0 <= s <= 1.0:
            raise NumericValidationError(f"s must lie in [-1, 1], got {self.s}")
        object.__setattr__(self, "s", s)


def as_s(s: float | SParameter) -> float:
    if isinstance(s, SParameter):
        return s.s
    return SParameter(float(s)).s


@dataclass(frozen=True)
class CGTable:
    """Samples W^(s)(r_i e^{i gamma_q}) on a polar grid (probability per unit area)."""

    grid: PolarGrid
    s: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", as_s(self.s))
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_r, self.grid.m_gamma):
            raise NumericValidationError(
                f"expected values of shape {(self.grid.n_r, self.grid.m_gamma)}, got {v.shape}"
            )
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise NumericValidationError("table contains non-finite values")
        object.__setattr__(self, "values", _frozen(v.copy()))


def laguerre_assoc(j: int, a: int, x: float) -> float:
    """Associated Laguerre L_j^{(a)}(x) by the three-term recurrence in the degree."""
    if int(j) != j or j < 0 or int(a) != a or a < 0:
        raise NumericValidationError(f"need integer j >= 0 and a >= 0, got j={j}, a={a}")
    table = _laguerre_table(int(j), int(a), np.asarray([float(x)]))
    return float(table[int(j), int(a), 0])


def _laguerre_table(j_max: int, a_max: int, x: np.ndarray) -> np.ndarray:
    """L[j, a, i] = L_j^{(a)}(x_i) for all j <= j_max, a <= a_max."""
    a = np.arange(a_max + 1, dtype=float)[:, None]
    out = np.empty((j_max + 1, a_max + 1, x.size))
    out[0] = 1.0
    if j_max >= 1:
        out[1] = 1.0 + a - x[None, :]
    for j in range(1, j_max):
        out[j + 1] = ((2.0 * j + 1.0 + a - x[None, :]) * out[j] - (j + a) * out[j - 1]) / (j + 1.0)
    return out


def t_matrix_element(j: int, k: int, alpha: complex, s_eff: float) -> complex:
    """<j| T^(-s_eff)(alpha) |k> in closed form.

    The parameterization follows the kernel family used by the inverse map: for
    the element of T^(sigma) pass s_eff = -sigma. s_eff = 1 is the analytic
    limit T^(-1)(alpha) = |alpha><alpha|, the coherent-state projector; s_eff
    must lie in (-1, 1] (the kernel diverges at s_eff = -1).
    """
    if int(j) != j or j < 0 or int(k) != k or k < 0:
        raise NumericValidationError(f"need integer j, k >= 0, got j={j}, k={k}")
    s = float(s_eff)
    if not np.isfinite(s) or not -1.0 < s <= 1.0:
        raise NumericValidationError(f"s_eff must lie in (-1, 1], got {s_eff}")
    j, k = int(j), int(k)
    if j > k:
        return complex(np.conj(t_matrix_element(k, j, alpha, s)))
    alpha = complex(alpha)
    mag = abs(alpha)
    theta = np.angle(alpha) if mag > 0.0 else 0.0
    lg = gammaln(np.asarray([j + 1.0, k + 1.0]))
    if s == 1.0:
        # |alpha><alpha| projector limit.
        if mag == 0.0:
            return 1.0 + 0.0j if j == k == 0 else 0.0 + 0.0j
        logmag = -mag * mag + (j + k) * np.log(mag) - 0.5 * (lg[0] + lg[1])
        return complex(np.exp(logmag) * np.exp(1j * (j - k) * theta))
    if mag == 0.0 and k > j:
        return 0.0 + 0.0j
    u = np.log(2.0 / (1.0 + s))
    v = np.log((1.0 - s) / (1.0 + s))
    radial = (k - j) * np.log(mag) if k > j else 0.0
    logmag = 0.5 * (lg[0] - lg[1]) + (k - j + 1) * u + j * v + radial - 2.0 * mag * mag / (1.0 + s)
    lag = laguerre_assoc(j, k - j, 4.0 * mag * mag / (1.0 - s * s))
    sign = -1.0 if j % 2 else 1.0
    return complex(sign * np.exp(logmag) * lag * np.exp(-1j * (k - j) * theta))


def t_matrix(t: Truncation | int, alpha: complex, s_eff: float) -> np.ndarray:
    """Full matrix of t_matrix_element over the truncated space."""
    dim = as_dim(t)
    alpha = complex(alpha)
    if abs(alpha) == 0.0:
        out = np.zeros((dim, dim), dtype=complex)
        for j in range(dim):
            out[j, j] = t_matrix_element(j, j, 0.0, s_eff)
        return _frozen(out)
    blocks = _t_radial_blocks(dim, np.asarray([abs(alpha)]), float(s_eff))[0]
    k = np.arange(dim)
    phases = np.exp(-1j * (k[None, :] - k[:, None]) * np.angle(alpha))
    return _frozen(blocks * phases)


def _t_radial_blocks(dim: int, r: np.ndarray, s_eff: float) -> np.ndarray:
    """Radial factor B[i][j][k] with <j|T^(-s_eff)(r e^{i gamma})|k> = B e^{-i(k-j)gamma}.

    B is real and symmetric in (j, k). Requires r > 0 elementwise.
    """
    s = float(s_eff)
    if not np.isfinite(s) or not -1.0 < s <= 1.0:
        raise NumericValidationError(f"s_eff must lie in (-1, 1], got {s_eff}")
    idx = np.arange(dim)
    lg = gammaln(idx + 1.0)
    log_r = np.log(r)[:, None, None]
    r2 = (r * r)[:, None, None]
    jj, kk = np.meshgrid(idx, idx, indexing="ij")
    lo = np.minimum(jj, kk)
    hi = np.maximum(jj, kk)
    steps = hi - lo
    if s == 1.0:
        exponent = -r2 + (jj + kk)[None, :, :] * log_r - 0.5 * (lg[jj] + lg[kk])[None, :, :]
        blocks = np.exp(exponent)
    else:
        u = np.log(2.0 / (1.0 + s))
        v = np.log((1.0 - s) / (1.0 + s))
        c_lo = 0.5 * lg[lo] + lo * (v - u)
        c_hi = -0.5 * lg[hi] + hi * u
        exponent = (c_lo + c_hi + u)[None, :, :] + steps[None, :, :] * log_r - 2.0 * r2 / (1.0 + s)
        lag = _laguerre_table(dim - 1, dim - 1, 4.0 * (r * r) / (1.0 - s * s))
        lag_jk = np.moveaxis(lag[lo, steps], -1, 0)
        signs = np.where(lo % 2 == 0, 1.0, -1.0)
        blocks = signs[None, :, :] * np.exp(exponent) * lag_jk
    if not np.all(np.isfinite(blocks)):
        raise NumericValidationError(
            f"kernel overflow assembling T blocks at dim={dim}, s_eff={s}; "
            "reduce r_max, dim, or move s away from the boundary"
        )
    return blocks


def _angular_modes(values: np.ndarray, m_gamma: int, dim: int, gamma_weight: float) -> np.ndarray:
    """C[i][mu] = w_gamma sum_q values[i][q] e^{-i mu gamma_q} for |mu| <= dim-1."""
    spectra = np.fft.fft(values, axis=1)
    mu = np.arange(-(dim - 1), dim)
    signs = np.where(mu % 2 == 0, 1.0, -1.0)
    # gamma_q = -pi + 2 pi q / M: e^{-i mu gamma_q} = (-1)^mu w^{-mu q}.
    return gamma_weight * signs[None, :] * spectra[:, mu % m_gamma]


def w_s_from_density(rho: DensityMatrix, grid: PolarGrid, s: float | SParameter) -> CGTable:
    """Forward map W^(s)(alpha) = (1/pi) Tr{rho T^(s)(alpha)}, s < 1.

    s = 1 is distributional (Glauber-Sudarshan); for smooth-P workflows sample P
    directly and use npw_from_p.
    """
    s = as_s(s)
    if s >= 1.0:
        raise NumericValidationError(
            "forward map requires s < 1; the s = 1 function is distributional "
            "(use npw_from_p with smooth P samples instead)"
        )
    dim = rho.dim
    grid.require_resolves_angular(dim)
    tail = float(rho.matrix[dim - 1, dim - 1].real)
    if tail > 1e-10:
        warnings.warn(
            f"density has weight {tail:.3e} at the top Fock level; W^(s) values "
            "carry a truncation bias",
            stacklevel=2,
        )
    blocks = _t_radial_blocks(dim, grid.r_nodes, -s)
    mat = rho.matrix
    modes = np.empty((grid.n_r, 2 * dim - 1), dtype=complex)
    for mu in range(-(dim - 1), dim):
        j = np.arange(max(0, -mu), min(dim, dim - mu))
        k = j + mu
        # (1/pi) sum over the mu-th diagonal of rho_{kj} <j|T|k>.
        modes[:, mu + dim - 1] = blocks[:, j, k] @ mat[k, j]
    padded = np.zeros((grid.n_r, grid.m_gamma), dtype=complex)
    mu = np.arange(-(dim - 1), dim)
    signs = np.where(mu % 2 == 0, 1.0, -1.0)
    padded[:, mu % grid.m_gamma] = signs[None, :] * modes
    values = np.fft.fft(padded, axis=1) / np.pi
    imag_max = float(np.max(np.abs(values.imag)))
    # Relative residue: tables of a truncated state can legitimately carry huge
    # T^(s) magnitudes, where an eps-level imaginary part is roundoff, not bias.
    scale = max(1.0, float(np.max(np.abs(values.real))))
    if imag_max > 1e-10 * scale:
        raise NumericValidationError(
            f"W^(s) table has imaginary residue {imag_max:.3e} (input not Hermitian enough)"
        )
    coverage = float(np.real(grid.integrate(values)))
    if abs(coverage - 1.0) > 1e-6:
        warnings.warn(
            f"polar quadrature of W^(s) gives {coverage:.8g}, not 1; enlarge r_max or refine the grid",
            stacklevel=2,
        )
    return CGTable(grid, s, values)


def density_from_w_s(table: CGTable, t: Truncation | int, *,
                     tolerances: Tolerances | None = None) -> DensityMatrix:
    """Inverse map rho = integral W^(s)(alpha) T^(-s)(alpha) d^2(alpha), s > -1.

    Quadrature-limited: the output is Hermitized and validated with trace and
    positivity tolerances of 1e-4 unless overridden.
    """
    s = table.s
    if s <= -1.0:
        raise NumericValidationError("inverse map requires s > -1 (T^(-s) diverges at s = -1)")
    dim = as_dim(t)
    grid = table.grid
    grid.require_resolves_angular(dim)
    modes = _angular_modes(table.values, grid.m_gamma, dim, grid.gamma_weight)
    blocks = _t_radial_blocks(dim, grid.r_nodes, s)
    radial = grid.r_weights * grid.r_nodes
    k_idx = np.arange(dim)
    mode_of = (k_idx[None, :] - k_idx[:, None]) + dim - 1  # (j, k) -> mu index
    mode_samples = modes[:, mode_of]  # (n_r, dim, dim)
    mat = np.einsum("i,ijk,ijk->jk", radial, blocks, mode_samples)
    mat = 0.5 * (mat + mat.conj().T)
    trace_err = abs(mat.trace() - 1.0)
    if trace_err > QUADRATURE_NORM_TOL:
        # T^(-s) magnitudes grow like ((1-s)/(1+s))^(dim-1) for s < 0; once
        # kernel_max * eps swamps the target, no grid refinement can recover
        # the integral in float64.
        kernel_max = float(np.abs(blocks).max())
        raise GridCompatibilityError(
            f"inverse-map quadrature inadequate: trace error {trace_err:.3e} on "
            f"grid (r_max={grid.r_max}, n_r={grid.n_r}, m_gamma={grid.m_gamma}); "
            f"kernel magnitudes reach {kernel_max:.1e}, float64 noise floor "
            f"~{kernel_max * 2.3e-16:.1e}"
        )
    if tolerances is None:
        tolerances = DEFAULT_TOLERANCES.with_overrides(trace=QUADRATURE_NORM_TOL,
                                                       psd=QUADRATURE_NORM_TOL)
    return DensityMatrix.from_matrix(mat, tolerances=tolerances)


def npw_from_w_s(table: CGTable, phase_grid: PhaseGrid, t: Truncation | int, *,
                 method: str = "direct") -> NPWignerTable:
    """Bridge W^(s) -> rho_W for -1 < s < 1.

    method="direct" integrates the W^(s) samples against the explicit
    rho_W kernel (1/2pi) sum_k B_kn(r) cos[(n-k)(phi-gamma)]; method="composed"
    reconstructs the density matrix first and applies the forward map. The two
    must agree within quadrature tolerance.
    """
    s = table.s
    if not -1.0 < s < 1.0:
        raise NumericValidationError(f"bridge requires -1 < s < 1, got s = {s}")
    dim = as_dim(t)
    if method == "composed":
        rho = density_from_w_s(table, dim)
        return npw_from_density(rho, phase_grid, norm_tol=QUADRATURE_NORM_TOL)
    if method != "direct":
        raise NumericValidationError(f"unknown bridge method {method!r}")
    return _npw_direct(table.values, table.grid, phase_grid, dim, s_eff=s)


def npw_from_p(p_values: np.ndarray, grid: PolarGrid, phase_grid: PhaseGrid,
               t: Truncation | int) -> NPWignerTable:
    """Bridge from smooth P samples: rho_W as the P-weighted coherent-state kernel.

    Smoothness and band-limits are the caller's responsibility; the sampled P
    must integrate to 1 within 1e-6 on the grid.
    """
    dim = as_dim(t)
    p = np.asarray(p_values, dtype=float)
    if p.shape != (grid.n_r, grid.m_gamma):
        raise NumericValidationError(
            f"expected P samples of shape {(grid.n_r, grid.m_gamma)}, got {p.shape}"
        )
    if not np.all(np.isfinite(p)):
        raise NumericValidationError("P samples contain non-finite values")
    norm = float(grid.integrate(p))
    if abs(norm - 1.0) > 1e-6:
        raise NumericValidationError(
            f"P samples integrate to {norm:.8g}, not 1 (tolerance 1e-6); "
            "normalize P or widen/refine the grid"
        )
    # T^(-1)(alpha) = |alpha><alpha| turns rho = int P(alpha)|alpha><alpha| d2a
    # into the same kernel quadrature as the W^(s) bridge at the projector limit.
    return _npw_direct(p, grid, phase_grid, dim, s_eff=1.0)


def gaussian_p_samples(grid: PolarGrid, center: complex = 0.0, variance: float = 0.5) -> np.ndarray:
    """Samples of P(alpha) = exp(-|alpha - center|^2 / variance) / (pi variance).

    variance = nbar gives the thermal-state P function; a small variance at a
    nonzero center approximates the coherent-state delta limit. The grid must
    cover the Gaussian (checked by npw_from_p's normalization gate downstream).
    """
    if variance <= 0.0:
        raise NumericValidationError(f"P Gaussian needs variance > 0, got {variance}")
    center = complex(center)
    alpha = grid.r_nodes[:, None] * np.exp(1j * grid.gamma_nodes[None, :])
    return np.exp(-np.abs(alpha - center) ** 2 / variance) / (np.pi * variance)


def _npw_direct(values: np.ndarray, grid: PolarGrid, phase_grid: PhaseGrid, dim: int,
                s_eff: float) -> NPWignerTable:
    """Quadrature of v[j][n] = (1/2pi) Re sum_k int B_kn(r) e^{i(n-k)(phi_j-gamma)} W r dr dgamma."""
    grid.require_resolves_angular(dim)
    phase_grid.require_resolves(dim)
    m_points = phase_grid.m_points
    modes = _angular_modes(np.asarray(values, dtype=complex), grid.m_gamma, dim, grid.gamma_weight)
    blocks = _t_radial_blocks(dim, grid.r_nodes, s_eff)
    radial = grid.r_weights * grid.r_nodes
    ladder = np.zeros((m_points, dim), dtype=complex)
    n_idx = np.arange(dim)
    for mu in range(-(dim - 1), dim):
        n = n_idx[(n_idx - mu >= 0) & (n_idx - mu < dim)]
        k = n - mu
        # T[mu, n] = sum_i w_i r_i B[i, k, n] C[i, mu]
        row = (radial[:, None] * blocks[:, k, n] * modes[:, [mu + dim - 1]]).sum(axis=0)
        sign = -1.0 if mu % 2 else 1.0
        ladder[mu % m_points, n] = sign * row
    table_values = np.fft.ifft(ladder, axis=0).real * (m_points / (2.0 * np.pi))
    return NPWignerTable(phase_grid, table_values, QUADRATURE_NORM_TOL)
