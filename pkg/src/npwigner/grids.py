"""Quadrature grids: uniform phase grids on [-pi, pi) and polar grids on the complex plane."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import GridCompatibilityError


def _pow2_at_least(n: int) -> int:
    m = 1
    while m < n:
        m *= 2
    return m


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform phase grid phi_j = -pi + 2*pi*j/M with weight 2*pi/M.

    A grid paired with a dimension-D problem must satisfy M >= 2*D - 1 so that
    trigonometric polynomials of degree D - 1 are integrated exactly.
    """

    m_points: int

    def __post_init__(self) -> None:
        if int(self.m_points) != self.m_points or self.m_points < 1:
            raise GridCompatibilityError(f"m_points must be a positive integer, got {self.m_points}")
        object.__setattr__(self, "m_points", int(self.m_points))

    @classmethod
    def default_for(cls, dim: int) -> "PhaseGrid":
        """Smallest power of two with at least 4*dim points."""
        return cls(_pow2_at_least(4 * int(dim)))

    @cached_property
    def nodes(self) -> np.ndarray:
        phi = -np.pi + 2.0 * np.pi * np.arange(self.m_points) / self.m_points
        phi.setflags(write=False)
        return phi

    @property
    def weight(self) -> float:
        return 2.0 * np.pi / self.m_points

    def resolves(self, dim: int) -> bool:
        return self.m_points >= 2 * dim - 1

    def require_resolves(self, dim: int) -> None:
        if not self.resolves(dim):
            raise GridCompatibilityError(
                f"phase grid with {self.m_points} points cannot resolve dimension {dim}; "
                f"need at least {2 * dim - 1} points"
            )


@dataclass(frozen=True)
class PolarGrid:
    """Polar quadrature for integrals over the complex plane.

    Radial: Gauss-Legendre with n_r nodes mapped to [0, r_max].
    Angular: m_gamma uniform nodes gamma_q = -pi + 2*pi*q/m_gamma, weight 2*pi/m_gamma.
    The measure d^2(alpha) = r dr dgamma is applied by `integrate`.
    """

    r_max: float
    n_r: int = 200
    m_gamma: int = 128

    def __post_init__(self) -> None:
        if not (self.r_max > 0.0 and np.isfinite(self.r_max)):
            raise GridCompatibilityError(f"r_max must be positive and finite, got {self.r_max}")
        if self.n_r < 1 or self.m_gamma < 1:
            raise GridCompatibilityError("n_r and m_gamma must be positive")
        object.__setattr__(self, "r_max", float(self.r_max))
        object.__setattr__(self, "n_r", int(self.n_r))
        object.__setattr__(self, "m_gamma", int(self.m_gamma))

    @classmethod
    def default_for(cls, dim: int, r_max: float | None = None,
                    n_r: int | None = None, m_gamma: int | None = None) -> "PolarGrid":
        # r_max floor keeps the unit-Gaussian normalization check valid at small dim.
        if r_max is None:
            r_max = max(4.5, 1.5 * np.sqrt(dim))
        return cls(
            r_max=r_max,
            n_r=200 if n_r is None else n_r,
            m_gamma=_pow2_at_least(4 * dim) if m_gamma is None else m_gamma,
        )

    @cached_property
    def _radial(self) -> tuple[np.ndarray, np.ndarray]:
        x, w = np.polynomial.legendre.leggauss(self.n_r)
        r = 0.5 * self.r_max * (x + 1.0)
        wr = 0.5 * self.r_max * w
        r.setflags(write=False)
        wr.setflags(write=False)
        return r, wr

    @property
    def r_nodes(self) -> np.ndarray:
        return self._radial[0]

    @property
    def r_weights(self) -> np.ndarray:
        return self._radial[1]

    @cached_property
    def gamma_nodes(self) -> np.ndarray:
        g = -np.pi + 2.0 * np.pi * np.arange(self.m_gamma) / self.m_gamma
        g.setflags(write=False)
        return g

    @property
    def gamma_weight(self) -> float:
        return 2.0 * np.pi / self.m_gamma

    def integrate(self, values: np.ndarray) -> complex | float:
        """Integrate samples of shape (n_r, m_gamma) against r dr dgamma."""
        values = np.asarray(values)
        if values.shape != (self.n_r, self.m_gamma):
            raise GridCompatibilityError(
                f"expected samples of shape {(self.n_r, self.m_gamma)}, got {values.shape}"
            )
        radial = self.r_weights * self.r_nodes
        return (radial @ values.sum(axis=1)) * self.gamma_weight

    def resolves_angular(self, dim: int) -> bool:
        return self.m_gamma >= 2 * dim - 1

    def require_resolves_angular(self, dim: int) -> None:
        if not self.resolves_angular(dim):
            raise GridCompatibilityError(
                f"polar grid with {self.m_gamma} angular points cannot resolve dimension {dim}; "
                f"need at least {2 * dim - 1}"
            )
