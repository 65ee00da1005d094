"""Recover the density operator from its number-phase Wigner function.

The phi-Fourier modes of a table satisfy 2 c[m][n] = rho_{n-m,n} + rho_{n,n+m}
(one-sided for n < m), so the off-diagonals follow either from the closed-form
alternating sum or by walking the two-term recursion up each ladder m. Only the
diagonal sum d[n] is determined at m = 0; that is exactly the diagonal of rho.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, InconsistentInputError, NumericValidationError, Tolerances
from .fock import DensityMatrix, _frozen
from .npw import NPWignerTable


@dataclass(frozen=True)
class FourierLadder:
    """Ladder coefficients of a table: diag_sum[n] = rho_nn, coeffs[m][n] = rho_{n,n+m}.

    coeffs is a dim x dim array whose row m holds the m-th ladder; entries with
    m + n > dim - 1 lie beyond the truncated anti-diagonal, are identically
    zero and carry no information. Row 0 is unused (the diagonal is real and
    lives in diag_sum).
    """

    diag_sum: np.ndarray = field(repr=False)
    coeffs: np.ndarray = field(repr=False)
    norm_tol: InitVar[float] = 1e-10

    def __post_init__(self, norm_tol: float) -> None:
        d = np.asarray(self.diag_sum, dtype=float)
        c = np.asarray(self.coeffs, dtype=complex)
        dim = d.size
        if d.ndim != 1 or c.shape != (dim, dim):
            raise NumericValidationError(
                f"ladder shapes inconsistent: diag_sum {d.shape}, coeffs {c.shape}"
            )
        if not np.all(np.isfinite(d)) or not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise NumericValidationError("ladder contains non-finite coefficients")
        total = d.sum()
        if abs(total - 1.0) > norm_tol:
            raise NumericValidationError(
                f"ladder diagonal sums to {total:.17g}, deviating from 1 beyond {norm_tol:.3e}"
            )
        # Zero out the unused row and the region beyond the anti-diagonal.
        c = c.copy()
        c[0, :] = 0.0
        for m in range(1, dim):
            c[m, dim - m:] = 0.0
        object.__setattr__(self, "diag_sum", _frozen(d.copy()))
        object.__setattr__(self, "coeffs", _frozen(c))

    @property
    def dim(self) -> int:
        return self.diag_sum.size


def fourier_coefficients(table: NPWignerTable) -> np.ndarray:
    """Modes c[m][n] = w sum_j v[j][n] e^{-i m phi_j} for 0 <= m <= dim-1.

    Exact (to roundoff) for the trigonometric polynomials produced by the
    forward map, since the table grid satisfies M >= 2 dim - 1.
    """
    dim = table.dim
    spectra = np.fft.fft(table.values, axis=0)[:dim, :]
    m = np.arange(dim)
    # On nodes phi_j = -pi + 2 pi j / M: e^{-i m phi_j} = (-1)^m w^{-mj}.
    signs = np.where(m % 2 == 0, 1.0, -1.0)
    return table.grid.weight * signs[:, None] * spectra


def _kahan_cumsum(x: np.ndarray) -> np.ndarray:
    """Compensated running sum along axis 0."""
    out = np.empty_like(x)
    total = np.zeros(x.shape[1:], dtype=x.dtype)
    comp = np.zeros_like(total)
    for i in range(x.shape[0]):
        y = x[i] - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[i] = total
    return out


def ladder_closed_form(table: NPWignerTable, *, norm_tol: float = 1e-10) -> FourierLadder:
    """Closed-form ladders: coeffs[m][n] = 2 sum_{l=0}^{floor(n/m)} (-1)^l c[m][n-lm].

    The alternating sum telescopes the two-term recursion, so each entry equals
    rho_{n,n+m} directly. Evaluated as a cumulative alternating sum along each
    residue class (ascending index = descending term order); compensated
    summation kicks in for dim > 64 to control alternating cancellation.
    """
    c = fourier_coefficients(table)
    dim = table.dim
    d = c[0].real.copy()
    coeffs = np.zeros((dim, dim), dtype=complex)
    cumsum = _kahan_cumsum if dim > 64 else lambda x: np.cumsum(x, axis=0)
    for m in range(1, dim):
        n_classes = -(-dim // m)
        padded = np.zeros(m * n_classes, dtype=complex)
        padded[:dim] = c[m]
        ladder = padded.reshape(n_classes, m)  # ladder[l, r] = c[m][r + l*m]
        signs = np.where(np.arange(n_classes) % 2 == 0, 1.0, -1.0)[:, None]
        partial = signs * cumsum(signs * ladder)
        coeffs[m, :] = 2.0 * partial.reshape(-1)[:dim]
    return FourierLadder(d, coeffs, norm_tol)


def ladder_recursive(table: NPWignerTable, *, norm_tol: float = 1e-10) -> FourierLadder:
    """Recursive ladders: seed coeffs[m][n] = 2 c[m][n] for n < m, then walk
    coeffs[m][n] = 2 c[m][n] - coeffs[m][n-m] up each ladder."""
    c = fourier_coefficients(table)
    dim = table.dim
    d = c[0].real.copy()
    coeffs = np.zeros((dim, dim), dtype=complex)
    for m in range(1, dim):
        for n in range(dim):
            if n < m:
                coeffs[m, n] = 2.0 * c[m, n]
            else:
                coeffs[m, n] = 2.0 * c[m, n] - coeffs[m, n - m]
    return FourierLadder(d, coeffs, norm_tol)


def assemble_density(ladder: FourierLadder, *,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Place diag_sum on the diagonal and coeffs[m][n] at (n, n+m), conjugate below.

    Hermiticity is exact by construction; trace and positivity are validated and
    a violation is reported as inconsistent input (the table did not come from a
    density matrix).
    """
    dim = ladder.dim
    mat = np.diag(ladder.diag_sum.astype(complex))
    for m in range(1, dim):
        n = np.arange(dim - m)
        mat[n, n + m] = ladder.coeffs[m, :dim - m]
        mat[n + m, n] = np.conj(ladder.coeffs[m, :dim - m])
    try:
        return DensityMatrix.from_matrix(mat, tolerances=tolerances)
    except NumericValidationError as exc:
        raise InconsistentInputError(f"assembled matrix is not a valid density matrix: {exc}") from exc


def reconstruct_density(table: NPWignerTable, *, route: str = "closed_form",
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Full table -> density matrix, via the chosen ladder route."""
    if route == "closed_form":
        ladder = ladder_closed_form(table, norm_tol=tolerances.trace)
    elif route == "recursive":
        ladder = ladder_recursive(table, norm_tol=tolerances.trace)
    else:
        raise NumericValidationError(f"unknown reconstruction route {route!r}")
    return assemble_density(ladder, tolerances=tolerances)
