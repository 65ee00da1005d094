"""Reference states on the truncated Fock space.

Constructors that truncate an infinite-dimensional state renormalize the result
and record the discarded probability in `tail_weight`. By default a tail above
the `tail` tolerance is rejected; pass allow_tail=True to keep the state anyway.
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass

from .config import (DEFAULT_TOLERANCES, FormatError, NumericValidationError,
                     Tolerances, TruncationTailError)
from .fock import DensityMatrix, StateVector, Truncation, as_dim, random_density


@dataclass(frozen=True)
class CoherentPhaseParam:
    """Parameter zeta = |zeta| e^{i phase} of a phase-coherent state, |zeta| < 1."""

    zeta: complex

    def __post_init__(self) -> None:
        z = complex(self.zeta)
        if abs(z) >= 1.0:
            raise NumericValidationError(f"coherent phase parameter requires |zeta| < 1, got |zeta| = {abs(z)}")
        object.__setattr__(self, "zeta", z)

    @property
    def modulus(self) -> float:
        return abs(self.zeta)

    @property
    def phase(self) -> float:
        return float(np.angle(self.zeta))


def phase_overlap(n: int, phi: float) -> complex:
    """<n|phi> = e^{i n phi} / sqrt(2 pi) for the improper phase state |phi>.

    Phase states are never materialized as vectors; all formulas consume only
    these overlaps.
    """
    if int(n) != n or n < 0:
        raise NumericValidationError(f"Fock index must be a nonnegative integer, got {n}")
    return complex(np.exp(1j * int(n) * float(phi)) / np.sqrt(2.0 * np.pi))


def phase_state_amplitudes(t: Truncation | int, phi: float) -> np.ndarray:
    """Vector of overlaps <n|phi> for n = 0 .. dim-1."""
    dim = as_dim(t)
    n = np.arange(dim)
    return np.exp(1j * n * float(phi)) / np.sqrt(2.0 * np.pi)


def _check_tail(tail: float, allow_tail: bool, tolerances: Tolerances, what: str) -> float:
    tail = max(float(tail), 0.0)
    if tail > tolerances.tail and not allow_tail:
        raise TruncationTailError(
            f"{what}: discarded tail weight {tail:.3e} exceeds {tolerances.tail:.3e}; "
            "increase dim or pass allow_tail=True"
        )
    return tail


def number_state(t: Truncation | int, n: int) -> StateVector:
    dim = as_dim(t)
    if int(n) != n or not 0 <= n < dim:
        raise NumericValidationError(f"number state index {n} outside 0..{dim - 1}")
    v = np.zeros(dim, dtype=complex)
    v[int(n)] = 1.0
    return StateVector(v)


def coherent_state(t: Truncation | int, alpha: complex, *, allow_tail: bool = False,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> StateVector:
    """|alpha> with c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), truncated and renormalized."""
    dim = as_dim(t)
    alpha = complex(alpha)
    c = np.empty(dim, dtype=complex)
    c[0] = np.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, dim):
        c[n] = c[n - 1] * alpha / np.sqrt(n)
    kept = float(np.vdot(c, c).real)
    tail = _check_tail(1.0 - kept, allow_tail, tolerances, f"coherent_state(alpha={alpha})")
    return StateVector(c / np.sqrt(kept), tail_weight=tail)


def coherent_phase_state(t: Truncation | int, zeta: complex | CoherentPhaseParam, *,
                         allow_tail: bool = False,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> StateVector:
    """Phase-coherent state with c_n = sqrt(1 - |zeta|^2) zeta^n, truncated and renormalized.

    Eigenstate of the one-sided phase shift with eigenvalue zeta, |zeta| < 1.
    """
    dim = as_dim(t)
    if not isinstance(zeta, CoherentPhaseParam):
        zeta = CoherentPhaseParam(complex(zeta))
    zeta = zeta.zeta
    c = np.sqrt(1.0 - abs(zeta) ** 2) * zeta ** np.arange(dim)
    kept = float(np.vdot(c, c).real)
    tail = _check_tail(1.0 - kept, allow_tail, tolerances, f"coherent_phase_state(zeta={zeta})")
    return StateVector(c / np.sqrt(kept), tail_weight=tail)


def thermal_density(t: Truncation | int, nbar: float, *, allow_tail: bool = False,
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Thermal state with mean occupation nbar, truncated and renormalized."""
    dim = as_dim(t)
    nbar = float(nbar)
    if nbar < 0.0:
        raise NumericValidationError(f"thermal occupation must be nonnegative, got {nbar}")
    q = nbar / (1.0 + nbar)
    p = q ** np.arange(dim) / (1.0 + nbar)
    kept = float(p.sum())
    tail = _check_tail(1.0 - kept, allow_tail, tolerances, f"thermal_density(nbar={nbar})")
    return DensityMatrix(np.diag(p / kept).astype(complex), tail_weight=tail)


def density_from_descriptor(t: Truncation | int, descriptor: str, *, seed: int = 0,
                            allow_tail: bool = False,
                            tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Build a density matrix from a compact text descriptor.

    Grammar: "number:n" | "coherent:re,im" | "cps:abs,phi" | "thermal:nbar"
    | "random" | "random:seed". Malformed text raises FormatError; admissible
    syntax with inadmissible numbers raises NumericValidationError.
    """
    dim = as_dim(t)
    text = descriptor.strip()
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()

    def floats(expected: int) -> list[float]:
        parts = [p.strip() for p in arg.split(",")]
        if len(parts) != expected:
            raise FormatError(f"descriptor {text!r}: expected {expected} comma-separated numbers")
        try:
            return [float(p) for p in parts]
        except ValueError as exc:
            raise FormatError(f"descriptor {text!r}: {exc}") from None

    if kind == "number":
        (x,) = floats(1)
        if x != int(x):
            raise FormatError(f"descriptor {text!r}: number state index must be an integer")
        return number_state(dim, int(x)).density()
    if kind == "coherent":
        re, im = floats(2)
        return coherent_state(dim, complex(re, im), allow_tail=allow_tail,
                              tolerances=tolerances).density()
    if kind == "cps":
        mag, phi = floats(2)
        return coherent_phase_state(dim, mag * np.exp(1j * phi), allow_tail=allow_tail,
                                    tolerances=tolerances).density()
    if kind == "thermal":
        (nbar,) = floats(1)
        return thermal_density(dim, nbar, allow_tail=allow_tail, tolerances=tolerances)
    if kind == "random":
        if arg:
            try:
                seed = int(arg.strip())
            except ValueError:
                raise FormatError(f"descriptor {text!r}: random seed must be an integer") from None
        return random_density(dim, seed)
    raise FormatError(
        f"unknown state descriptor {text!r}; expected number:, coherent:, cps:, thermal: or random"
    )
