"""
Two-level dynamics in the one-excitation subspace of two coupled modes.

Basis ordering is ``(|1_a 0_b>, |0_a 1_b>)`` everywhere. Units have
hbar = 1: times in seconds, rates and frequencies in rad/s.

The Pauli-type operators follow the subspace definitions

    sigma_x = |10><01| + |01><10|
    sigma_y = i (|10><01| - |01><10|)
    sigma_z = |10><10| - |01><01|

Note that this ``sigma_y`` is the negative of the textbook Pauli Y matrix
in this basis ordering; the azimuthal angle ``phi`` of a
:class:`BlochHamiltonian` is measured against it.

Closed-form propagators are cross-checked against
:func:`matrix_exp_oracle`, which goes through a Hermitian
eigendecomposition and shares no code with the closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import NonUnitaryError, NormalizationError, NotHermitianError

# Validation gates. Exact-arithmetic invariants hold to ~1e-15; these only
# catch genuinely broken inputs.
NORM_TOL = 1e-9
UNITARY_TOL = 1e-9
HERMITIAN_TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

for _m in (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


def _frozen(a) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SubspaceState:
    """Pure state ``amp10 |1_a 0_b> + amp01 |0_a 1_b>``."""

    amp10: complex
    amp01: complex

    def __post_init__(self):
        object.__setattr__(self, "amp10", complex(self.amp10))
        object.__setattr__(self, "amp01", complex(self.amp01))
        norm = abs(self.amp10) ** 2 + abs(self.amp01) ** 2
        if not math.isfinite(norm) or abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm^2 = {norm!r}, expected 1")

    @classmethod
    def from_vector(cls, v) -> "SubspaceState":
        v = np.asarray(v, dtype=complex).reshape(-1)
        if v.shape != (2,):
            raise ValueError(f"expected 2 amplitudes, got shape {v.shape}")
        return cls(v[0], v[1])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp10, self.amp01], dtype=complex)

    def density(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class BlochHamiltonian:
    """``H = (omega/2) n.S`` with ``n = (sin t cos p, sin t sin p, cos t)``."""

    omega: float
    theta: float
    phi: float

    def __post_init__(self):
        for name in ("omega", "theta", "phi"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.omega < 0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phi must lie in [0, 2pi), got {self.phi}")

    @property
    def axis(self) -> tuple[float, float, float]:
        st = math.sin(self.theta)
        return (st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta))

    @property
    def matrix(self) -> np.ndarray:
        nx, ny, nz = self.axis
        return 0.5 * self.omega * (nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z)


@dataclass(frozen=True, eq=False)
class Propagator2:
    """A 2x2 unitary acting on :class:`SubspaceState`.

    Construction fails with :class:`NonUnitaryError` when
    ``max|m^dag m - I| > UNITARY_TOL``.
    """

    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = _frozen(self.m)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        resid = unitarity_residual(m)
        if not resid <= UNITARY_TOL:
            raise NonUnitaryError(f"unitarity residual {resid:.3e} exceeds {UNITARY_TOL:g}")
        object.__setattr__(self, "m", m)

    def __matmul__(self, other: "Propagator2") -> "Propagator2":
        return Propagator2(self.m @ other.m)

    def __repr__(self):
        return f"Propagator2({np.array2string(self.m, precision=6)})"


@dataclass(frozen=True)
class CoupledModeSystem:
    """Two resonant modes with hopping ``g (a^dag b + b^dag a)``.

    ``omega`` is the common mode frequency; it only contributes the global
    phase ``exp(-i omega t)`` on the one-excitation subspace.
    """

    g: float
    omega: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "g", float(self.g))
        object.__setattr__(self, "omega", float(self.omega))
        if not (math.isfinite(self.g) and self.g > 0):
            raise ValueError(f"coupling g must be finite and > 0, got {self.g}")
        if not math.isfinite(self.omega):
            raise ValueError(f"mode frequency must be finite, got {self.omega}")


def unitarity_residual(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def make_initial_state(theta0: float, phi0: float) -> SubspaceState:
    """``cos(theta0/2)|1_a 0_b> + exp(i phi0) sin(theta0/2)|0_a 1_b>``.

    Both angles are reduced modulo 2 pi first.
    """
    theta0 = math.fmod(theta0, 2 * math.pi)
    phi0 = math.fmod(phi0, 2 * math.pi)
    return SubspaceState(
        math.cos(theta0 / 2),
        complex(math.cos(phi0), math.sin(phi0)) * math.sin(theta0 / 2),
    )


def bloch_propagator(h: BlochHamiltonian, t: float) -> Propagator2:
    """``exp(-i H t)`` from the axis-angle identity.

    ``U = cos(omega t / 2) I - i sin(omega t / 2) (n . sigma)``, valid because
    ``(n . sigma)^2 = I``. Negative ``t`` gives the reversed evolution.
    """
    half = 0.5 * h.omega * t
    nx, ny, nz = h.axis
    n_dot_sigma = nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z
    return Propagator2(math.cos(half) * IDENTITY - 1j * math.sin(half) * n_dot_sigma)


def coupled_mode_propagator(
    sys: CoupledModeSystem, t: float, *, include_mode_phase: bool = False
) -> Propagator2:
    """Free evolution of the two coupled modes for time ``t``.

    Returns ``cos(g t) I - i sin(g t) sigma_x``. The global phase from the
    bare mode energy is dropped unless ``include_mode_phase`` is set.
    """
    gt = sys.g * t
    m = math.cos(gt) * IDENTITY - 1j * math.sin(gt) * SIGMA_X
    if include_mode_phase:
        m = complex(math.cos(sys.omega * t), -math.sin(sys.omega * t)) * m
    return Propagator2(m)


_SIGMA_Z_KICK = Propagator2(SIGMA_Z)


def sigma_z_kick() -> Propagator2:
    return _SIGMA_Z_KICK


def apply(u: Union[Propagator2, np.ndarray], s: SubspaceState) -> SubspaceState:
    """Return ``u s``. Raw arrays are validated as unitary first."""
    if not isinstance(u, Propagator2):
        u = Propagator2(u)
    return SubspaceState.from_vector(u.m @ s.vector)


def matrix_exp_oracle(h_matrix, t: float) -> np.ndarray:
    """``exp(-i H t)`` for a Hermitian ``H`` of any small size.

    Uses ``H = V diag(lam) V^dag`` so ``exp(-i H t) = V diag(exp(-i lam t)) V^dag``.
    Raises :class:`NotHermitianError` when ``max|H - H^dag|`` exceeds
    ``HERMITIAN_TOL`` (scaled by ``max(1, max|H|)``).
    """
    h = np.asarray(h_matrix, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    asym = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if asym > HERMITIAN_TOL * scale:
        raise NotHermitianError(f"matrix deviates from Hermitian by {asym:.3e}")
    lam, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return (v * np.exp(-1j * lam * t)) @ v.conj().T
