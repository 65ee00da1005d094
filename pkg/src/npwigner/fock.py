"""Truncated Fock space: core operator matrices and validated state containers.

All operators act on span{|0>, ..., |dim-1>}. Truncation is by plain cutoff, so
ladder identities that move probability through the top level hold only on the
blocks documented with each function.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, NumericValidationError, Tolerances


@dataclass(frozen=True)
class Truncation:
    """Number of retained Fock states |0> .. |dim-1>."""

    dim: int

    def __post_init__(self) -> None:
        if int(self.dim) != self.dim or self.dim < 1:
            raise NumericValidationError(f"dim must be a positive integer, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))


def as_dim(t: Truncation | int) -> int:
    """Accept either a Truncation or a bare dimension."""
    if isinstance(t, Truncation):
        return t.dim
    return Truncation(t).dim


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def annihilation_matrix(t: Truncation | int) -> np.ndarray:
    """<n|a|m> = sqrt(m) delta_{n,m-1}; the only nonzeros are the superdiagonal."""
    dim = as_dim(t)
    a = np.zeros((dim, dim), dtype=complex)
    n = np.arange(1, dim)
    a[n - 1, n] = np.sqrt(n)
    return _frozen(a)


def creation_matrix(t: Truncation | int) -> np.ndarray:
    """Adjoint of annihilation_matrix; a^dag |dim-1> truncates to zero."""
    return _frozen(annihilation_matrix(t).conj().T.copy())


def number_matrix(t: Truncation | int) -> np.ndarray:
    """diag(0, 1, ..., dim-1)."""
    dim = as_dim(t)
    return _frozen(np.diag(np.arange(dim, dtype=float)).astype(complex))


def displacement_matrix(t: Truncation | int, xi: complex) -> np.ndarray:
    """exp(xi a^dag - conj(xi) a) on the truncated space.

    Computed by eigendecomposition of the Hermitian generator, so the result is
    unitary to roundoff. Truncation error grows once |xi|^2 approaches dim/4;
    a warning is emitted past that point.
    """
    dim = as_dim(t)
    xi = complex(xi)
    if abs(xi) ** 2 > dim / 4.0:
        warnings.warn(
            f"displacement |xi|^2 = {abs(xi)**2:.3g} exceeds dim/4 = {dim / 4.0:.3g}; "
            "truncation artifacts are likely",
            stacklevel=2,
        )
    a = annihilation_matrix(t)
    # xi a^dag - conj(xi) a = i H with H Hermitian.
    h = -1j * (xi * a.conj().T - np.conj(xi) * a)
    lam, vec = np.linalg.eigh(h)
    return _frozen((vec * np.exp(1j * lam)) @ vec.conj().T)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix on the truncated space.

    The wrapped array is read-only. `tail_weight` records probability discarded
    by a constructor that truncated an infinite-dimensional state; it is zero
    for matrices built directly.
    """

    matrix: np.ndarray = field(repr=False)
    tail_weight: float = 0.0

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise NumericValidationError(f"density matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", _frozen(m.copy()))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def truncation(self) -> Truncation:
        return Truncation(self.dim)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, *, tolerances: Tolerances = DEFAULT_TOLERANCES,
                    tail_weight: float = 0.0) -> "DensityMatrix":
        """Validate Hermiticity, trace and positivity, then wrap."""
        rho = cls(matrix, tail_weight=tail_weight)
        rho.validate(tolerances=tolerances)
        return rho

    def validate(self, *, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
        m = self.matrix
        if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
            raise NumericValidationError("density matrix has non-finite entries")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > tolerances.herm:
            raise NumericValidationError(
                f"density matrix is not Hermitian: max |rho - rho^dag| = {herm:.3e} "
                f"exceeds {tolerances.herm:.3e}"
            )
        tr = m.trace()
        if abs(tr - 1.0) > tolerances.trace:
            raise NumericValidationError(
                f"density matrix trace {tr:.17g} deviates from 1 by more than {tolerances.trace:.3e}"
            )
        eigmin = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
        if eigmin < -tolerances.psd:
            raise NumericValidationError(
                f"density matrix has eigenvalue {eigmin:.3e} below -{tolerances.psd:.3e}"
            )


@dataclass(frozen=True)
class StateVector:
    """Unit-norm pure state on the truncated space."""

    amplitudes: np.ndarray = field(repr=False)
    tail_weight: float = 0.0

    def __post_init__(self) -> None:
        v = np.asarray(self.amplitudes, dtype=complex)
        if v.ndim != 1 or v.size < 1:
            raise NumericValidationError(f"state vector must be one-dimensional, got shape {v.shape}")
        object.__setattr__(self, "amplitudes", _frozen(v.copy()))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def from_amplitudes(cls, amplitudes: np.ndarray, *,
                        tolerances: Tolerances = DEFAULT_TOLERANCES,
                        tail_weight: float = 0.0) -> "StateVector":
        psi = cls(amplitudes, tail_weight=tail_weight)
        v = psi.amplitudes
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise NumericValidationError("state vector has non-finite entries")
        norm2 = float(np.vdot(v, v).real)
        if abs(norm2 - 1.0) > tolerances.norm:
            raise NumericValidationError(
                f"state vector norm^2 = {norm2:.17g} deviates from 1 by more than {tolerances.norm:.3e}"
            )
        return psi

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()),
                             tail_weight=self.tail_weight)


def random_density(t: Truncation | int, seed: int) -> DensityMatrix:
    """G G^dag / Tr(G G^dag) for a seeded complex standard Gaussian G."""
    dim = as_dim(t)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m /= m.trace().real
    return DensityMatrix(m)
