"""
Concurrence, fidelity and trace distance for one-excitation states.

Two concurrence conventions are supported:

``"paper"`` (default)
    ``C = |alpha* beta|``, range ``[0, 1/2]``.
``"standard"``
    The Wootters value ``2 |alpha beta|``, range ``[0, 1]``.

Mixed states are those left behind when an atom carries the photon away:
a 2x2 block over ``(|1_a 0_b>, |0_a 1_b>)`` plus a vacuum population ``p00``
with no coherence between the two sectors.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import NormalizationError, PhysicalityError
from .subspace import SubspaceState

Convention = Literal["paper", "standard"]
CONVENTIONS = ("paper", "standard")

PSD_TOL = 1e-10
AMPLITUDE_NORM_TOL = 1e-12
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class AmplitudePair:
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > AMPLITUDE_NORM_TOL:
            raise NormalizationError(f"|alpha|^2 + |beta|^2 = {norm!r}")


def _scale(convention: str) -> float:
    if convention == "paper":
        return 1.0
    if convention == "standard":
        return 2.0
    raise ValueError(f"unknown concurrence convention {convention!r}; use one of {CONVENTIONS}")


def concurrence_bound(convention: Convention = "paper") -> float:
    return 0.5 * _scale(convention)


def amplitudes(theta0: float, phi0: float, g: float, t: float) -> AmplitudePair:
    """Closed-form amplitudes of the freely evolving coupled-mode state.

    Starting from ``cos(theta0/2)|10> + exp(i phi0) sin(theta0/2)|01>``::

        alpha(t) = cos(theta0/2) cos(gt) - i exp(i phi0) sin(theta0/2) sin(gt)
        beta(t)  = -i cos(theta0/2) sin(gt) + exp(i phi0) sin(theta0/2) cos(gt)
    """
    c, s = math.cos(theta0 / 2), math.sin(theta0 / 2)
    e = cmath.exp(1j * phi0)
    cg, sg = math.cos(g * t), math.sin(g * t)
    return AmplitudePair(c * cg - 1j * e * s * sg, -1j * c * sg + e * s * cg)


def _pair(s: Union[SubspaceState, AmplitudePair]) -> tuple[complex, complex]:
    if isinstance(s, SubspaceState):
        return s.amp10, s.amp01
    return s.alpha, s.beta


def concurrence_pure(
    s: Union[SubspaceState, AmplitudePair], convention: Convention = "paper"
) -> float:
    a, b = _pair(s)
    scale = _scale(convention)
    # rounding can overshoot the bound by an ulp for maximally entangled states
    return min(scale * abs(a.conjugate() * b), 0.5 * scale)


def check_mixed(rho2, p00: float = 0.0) -> np.ndarray:
    """Validate a 2x2 block plus vacuum population; return the block as an array."""
    rho = np.asarray(rho2, dtype=complex)
    if rho.shape != (2, 2):
        raise PhysicalityError(f"expected a 2x2 block, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > PSD_TOL:
        raise PhysicalityError("density block is not Hermitian")
    if p00 < -PSD_TOL:
        raise PhysicalityError(f"negative vacuum population {p00}")
    lam_min = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if lam_min < -PSD_TOL:
        raise PhysicalityError(f"density block has negative eigenvalue {lam_min:.3e}")
    total = float(np.trace(rho).real) + p00
    if abs(total - 1.0) > TRACE_TOL:
        raise PhysicalityError(f"trace(rho2) + p00 = {total!r}, expected 1")
    return rho


def concurrence_mixed(rho2, p00: float = 0.0, convention: Convention = "paper") -> float:
    """Concurrence of a state supported on ``{|10>, |01>, |00>}``.

    For such states the Wootters formula collapses to ``2 |<10|rho|01>|``;
    the paper convention halves it.
    """
    rho = check_mixed(rho2, p00)
    scale = _scale(convention)
    return min(scale * float(abs(rho[0, 1])), 0.5 * scale)


def fidelity(a: SubspaceState, b: SubspaceState) -> float:
    """Overlap modulus ``|<a|b>|``; insensitive to global phase."""
    return min(1.0, abs(np.vdot(a.vector, b.vector)))


def fidelity_mixed(psi: SubspaceState, rho2) -> float:
    """``sqrt(<psi|rho|psi>)``, which equals :func:`fidelity` for pure ``rho``."""
    v = psi.vector
    val = float(np.real(np.vdot(v, np.asarray(rho2) @ v)))
    return min(1.0, math.sqrt(max(val, 0.0)))


def two_mode_density(rho2, p00: float = 0.0) -> np.ndarray:
    """Embed ``rho2`` and ``p00`` as a 3x3 matrix over ``(|10>, |01>, |00>)``."""
    out = np.zeros((3, 3), dtype=complex)
    out[:2, :2] = rho2
    out[2, 2] = p00
    return out


def trace_distance(rho, sigma) -> float:
    """``(1/2) sum |eig(rho - sigma)|`` for equally sized density matrices."""
    d = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (d + d.conj().T)))))
