"""
Finite-duration kicks mediated by a two-level atom crossing mode b.

With a single excitation shared by mode a, mode b and the atom, the joint
dynamics is closed on the ordered basis

    0: |1_a 0_b, g>    1: |0_a 1_b, g>    2: |0_a 0_b, e>

The generator carries the a-b hopping ``g`` on the (0, 1) element and the
Jaynes-Cummings exchange ``gamma`` on the (1, 2) element. A pulse of length
``tau = pi / gamma`` with the hopping frozen maps ``|0_a 1_b, g>`` to minus
itself and leaves ``|1_a 0_b, g>`` alone, i.e. it is ``sigma_z`` on the
two-mode subspace.

Pulses do not advance the protocol clock: a kick at time ``t_k`` is the
full pulse propagator inserted between the free segments ending and
starting at ``t_k``. With ``freeze_hopping=False`` the hopping keeps running
for the extra ``tau``, which is the error the instantaneous idealisation
ignores.

Every kick uses a fresh atom in ``|g>``. Afterwards the atom is traced out
(the photon it may carry off shows up as vacuum population ``p00``) or, with
``disposal="postselect"``, projected on ``|g>`` and the state renormalised.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, NamedTuple, Optional, Union

import numpy as np

from .errors import PhysicalityError, TraceLeakError
from .metrics import Convention, check_mixed, concurrence_mixed
from .sequencer import KickSchedule, segment_sample_times
from .subspace import CoupledModeSystem, SubspaceState, coupled_mode_propagator, matrix_exp_oracle

Disposal = Literal["trace", "postselect"]

LEAK_TOL = 1e-9
ATOM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FullSpaceDensity:
    """3x3 density matrix over ``(|10,g>, |01,g>, |00,e>)``."""

    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (3, 3):
            raise PhysicalityError(f"expected 3x3, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise PhysicalityError("full-space density is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-12:
            raise PhysicalityError(f"trace {np.trace(rho).real!r} != 1")
        if np.linalg.eigvalsh(rho)[0] < -1e-10:
            raise PhysicalityError("full-space density has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_subspace(cls, s: SubspaceState) -> "FullSpaceDensity":
        """Embed a two-mode state with the atom in ``|g>``."""
        v = np.array([s.amp10, s.amp01, 0.0], dtype=complex)
        return cls(np.outer(v, v.conj()))


@dataclass(frozen=True)
class PulseParams:
    """Atom-field coupling ``gamma`` and pulse length ``tau`` (default ``pi/gamma``)."""

    gamma: float
    tau: Optional[float] = None
    freeze_hopping: bool = False

    def __post_init__(self):
        gamma = float(self.gamma)
        if not (math.isfinite(gamma) and gamma > 0):
            raise ValueError(f"gamma must be finite and > 0, got {gamma}")
        tau = math.pi / gamma if self.tau is None else float(self.tau)
        if not (math.isfinite(tau) and tau > 0):
            raise ValueError(f"tau must be finite and > 0, got {tau}")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "tau", tau)


class KickOutcome(NamedTuple):
    rho2: np.ndarray
    p00: float
    success: float


@dataclass(frozen=True, eq=False)
class MixedSample:
    time: float
    rho2: np.ndarray = field(repr=False)
    p00: float
    concurrence: float
    kicks: int


def phase_flip_time(gamma: float) -> float:
    """Pulse length that flips the sign of ``|1_b, g>``: ``gamma tau = pi``."""
    return math.pi / gamma


def full_hamiltonian(g: float, gamma: float, hopping_on: bool = True) -> np.ndarray:
    h = np.zeros((3, 3))
    if hopping_on:
        h[0, 1] = h[1, 0] = g
    h[1, 2] = h[2, 1] = gamma
    return h


def pulse_propagator(g: float, p: PulseParams) -> np.ndarray:
    return matrix_exp_oracle(full_hamiltonian(g, p.gamma, not p.freeze_hopping), p.tau)


def _as_block(state) -> tuple[np.ndarray, float]:
    if isinstance(state, SubspaceState):
        return state.density(), 0.0
    if isinstance(state, FullSpaceDensity):
        rho = state.rho
        if abs(rho[2, 2]) > ATOM_TOL or np.max(np.abs(rho[:2, 2])) > ATOM_TOL:
            raise PhysicalityError("atom must start in its ground state")
        return np.array(rho[:2, :2]), 0.0
    return np.asarray(state, dtype=complex), None


def kick_via_atom(
    state: Union[SubspaceState, FullSpaceDensity, np.ndarray],
    g: float,
    p: PulseParams,
    *,
    p00: float = 0.0,
    disposal: Disposal = "trace",
) -> KickOutcome:
    """One atom transit acting on the two-mode state.

    ``state`` is a pure subspace state, a full-space density with the atom
    in ``|g>``, or a bare 2x2 block whose missing weight is ``p00``. Returns
    the reduced 2x2 block, the updated vacuum population, and the
    post-selection success probability (1 for ``"trace"``).
    """
    rho2, fixed_p00 = _as_block(state)
    if fixed_p00 is not None:
        p00 = fixed_p00
    check_mixed(rho2, p00)
    full = np.zeros((3, 3), dtype=complex)
    full[:2, :2] = rho2
    u = pulse_propagator(g, p)
    full = u @ full @ u.conj().T
    out2 = full[:2, :2]
    if disposal == "trace":
        return KickOutcome(out2, p00 + float(full[2, 2].real), 1.0)
    if disposal == "postselect":
        success = p00 + float(np.trace(out2).real)
        return KickOutcome(out2 / success, p00 / success, success)
    raise ValueError(f"unknown disposal {disposal!r}")


def finite_pulse_trajectory(
    s0: SubspaceState,
    sched: KickSchedule,
    g: float,
    gamma: float,
    *,
    tau: Optional[float] = None,
    freeze_hopping: bool = False,
    samples_per_segment: int = 1,
    disposal: Disposal = "trace",
    convention: Convention = "paper",
    breakpoints: Iterable[float] = (),
) -> tuple[MixedSample, ...]:
    """Run the schedule with every kick realised by :func:`kick_via_atom`.

    Sampling (including ``breakpoints``) matches
    :func:`cavkick.sequencer.evolve_kicked`: pre- and post-kick samples share
    the kick time.
    """
    pulse = PulseParams(gamma, tau, freeze_hopping)
    sys = CoupledModeSystem(g)
    rho2, p00, kicks = s0.density(), 0.0, 0

    def sample(t: float) -> MixedSample:
        leak = abs(float(np.trace(rho2).real) + p00 - 1.0)
        if leak > LEAK_TOL:
            raise TraceLeakError(f"trace drifted by {leak:.3e} at t={t}")
        return MixedSample(t, rho2, p00, concurrence_mixed(rho2, p00, convention), kicks)

    out = [sample(0.0)]
    for start, end, kicked in sched.segments(breakpoints):
        seg_start = rho2
        for t, dt in segment_sample_times(start, end, samples_per_segment):
            u = coupled_mode_propagator(sys, dt).m
            rho2 = u @ seg_start @ u.conj().T
            out.append(sample(t))
        if kicked:
            rho2, p00, _ = kick_via_atom(rho2, g, pulse, p00=p00, disposal=disposal)
            kicks += 1
            out.append(sample(end))
    return tuple(out)
