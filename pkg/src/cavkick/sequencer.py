"""
Kick schedules and the kicked evolution.

Each schedule step is a free coupled-mode segment followed by an
instantaneous ``sigma_z`` kick, so after ``k`` kicks the state is

    sigma_z U_S(dt_k) ... sigma_z U_S(dt_1) |psi(0)>

For the equatorial coupled-mode Hamiltonian ``sigma_z U(t) sigma_z = U(-t)``,
so every pair of evenly spaced kicks undoes the free evolution between them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ScheduleError
from .metrics import fidelity
from .subspace import (
    SIGMA_Z,
    BlochHamiltonian,
    CoupledModeSystem,
    SubspaceState,
    apply,
    bloch_propagator,
    coupled_mode_propagator,
    sigma_z_kick,
)


@dataclass(frozen=True)
class KickSchedule:
    """Total protocol duration and the ordered kick instants in ``(0, total_time]``."""

    total_time: float
    kick_times: tuple[float, ...] = ()

    def __post_init__(self):
        total = float(self.total_time)
        times = tuple(float(t) for t in self.kick_times)
        if not (math.isfinite(total) and total > 0):
            raise ScheduleError(f"total_time must be finite and > 0, got {total}")
        for t in times:
            if not (math.isfinite(t) and 0 < t <= total):
                raise ScheduleError(f"kick time {t} outside (0, {total}]")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ScheduleError("kick times must be strictly increasing")
        object.__setattr__(self, "total_time", total)
        object.__setattr__(self, "kick_times", times)

    @property
    def n_kicks(self) -> int:
        return len(self.kick_times)

    def segments(self, breakpoints: Iterable[float] = ()) -> list[tuple[float, float, bool]]:
        """``(start, end, kick_at_end)`` for each free segment, in order.

        ``breakpoints`` split segments without kicking, so runs with different
        schedules can share a sampling grid.
        """
        kicks = set(self.kick_times)
        extra = {float(b) for b in breakpoints if 0 < b < self.total_time} - kicks
        bounds = [0.0, *sorted(kicks | extra)]
        out = [(a, b, b in kicks) for a, b in zip(bounds, bounds[1:])]
        if bounds[-1] < self.total_time:
            out.append((bounds[-1], self.total_time, False))
        return out


@dataclass(frozen=True)
class TrajectorySample:
    time: float
    state: SubspaceState
    kicks: int


@dataclass(frozen=True)
class Trajectory:
    samples: tuple[TrajectorySample, ...]

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    @property
    def final_state(self) -> SubspaceState:
        return self.samples[-1].state

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.samples])


def uniform_schedule(total_time: float, n_kicks: int) -> KickSchedule:
    """Kicks at ``k T / N`` for ``k = 1..N``."""
    if n_kicks < 0 or int(n_kicks) != n_kicks:
        raise ScheduleError(f"n_kicks must be a non-negative integer, got {n_kicks}")
    if not total_time > 0:
        raise ScheduleError(f"total_time must be > 0, got {total_time}")
    n = int(n_kicks)
    # pin the last kick to T so rounding in k*T/N never pushes it past the end
    times = [k * total_time / n for k in range(1, n)] + ([total_time] if n else [])
    return KickSchedule(total_time, tuple(times))


def explicit_schedule(total_time: float, kick_times: Iterable[float]) -> KickSchedule:
    return KickSchedule(total_time, tuple(kick_times))


def segment_sample_times(start: float, end: float, samples_per_segment: int) -> list[tuple[float, float]]:
    """``(time, elapsed)`` pairs sampling one free segment; the last time is exactly ``end``."""
    n = max(int(samples_per_segment), 1)
    span = end - start
    out = [(start + span * j / n, span * j / n) for j in range(1, n)]
    out.append((end, span))
    return out


def evolve_kicked(
    s0: SubspaceState,
    sched: KickSchedule,
    sys: CoupledModeSystem,
    samples_per_segment: int = 1,
    breakpoints: Iterable[float] = (),
) -> Trajectory:
    """Evolve ``s0`` through the schedule with ideal ``sigma_z`` kicks.

    The trajectory starts with the ``t = 0`` sample. Each free segment adds
    ``samples_per_segment`` samples ending on the segment end point; each kick
    adds a second sample at the same time carrying the post-kick state, so a
    kick shows up as two rows with equal ``time``. ``breakpoints`` are passed
    to :meth:`KickSchedule.segments`.
    """
    kick = sigma_z_kick()
    samples = [TrajectorySample(0.0, s0, 0)]
    state, kicks = s0, 0
    for start, end, kicked in sched.segments(breakpoints):
        for t, dt in segment_sample_times(start, end, samples_per_segment):
            point = apply(coupled_mode_propagator(sys, dt), state)
            samples.append(TrajectorySample(t, point, kicks))
        state = point
        if kicked:
            kicks += 1
            state = apply(kick, state)
            samples.append(TrajectorySample(end, state, kicks))
    return Trajectory(tuple(samples))


def kicked_final_state(s0: SubspaceState, sched: KickSchedule, sys: CoupledModeSystem) -> SubspaceState:
    """Final state from the single ordered operator product, without sampling."""
    u = np.eye(2, dtype=complex)
    for start, end, kicked in sched.segments():
        u = coupled_mode_propagator(sys, end - start).m @ u
        if kicked:
            u = SIGMA_Z @ u
    return apply(u, s0)


def echo_residual(s0: SubspaceState, total_time: float, n_kicks: int, sys: CoupledModeSystem) -> float:
    """``1 - |<psi(0)|psi(T)>|`` after ``n_kicks`` evenly spaced kicks.

    Only even counts are accepted; ``n_kicks = 0`` is plain free evolution.
    """
    if n_kicks < 0 or n_kicks % 2:
        raise ScheduleError(f"echo needs an even, non-negative kick count, got {n_kicks}")
    final = kicked_final_state(s0, uniform_schedule(total_time, n_kicks), sys)
    return 1.0 - fidelity(s0, final)


def reversal_residual(h: BlochHamiltonian, t: float) -> float:
    """``max|sigma_z U(t) sigma_z - U(-t)|``; zero for equatorial axes."""
    forward = bloch_propagator(h, t).m
    backward = bloch_propagator(h, -t).m
    return float(np.max(np.abs(SIGMA_Z @ forward @ SIGMA_Z - backward)))
