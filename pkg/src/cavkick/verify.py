"""Invariant checks run by ``cavkick verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .config import ExperimentConfig, config_from_dict
from .experiments import run_figure1, run_figure2, sweep_gamma, sweep_n
from .fullspace import finite_pulse_trajectory
from .io import render
from .metrics import concurrence_pure, trace_distance, two_mode_density
from .sequencer import echo_residual, evolve_kicked, explicit_schedule, reversal_residual
from .subspace import (
    BlochHamiltonian,
    CoupledModeSystem,
    SubspaceState,
    bloch_propagator,
    coupled_mode_propagator,
    matrix_exp_oracle,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_state(rng: np.random.Generator) -> SubspaceState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return SubspaceState.from_vector(v / np.linalg.norm(v))


def check_echo(rng, cfg) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(200):
        n = 2 * int(rng.integers(1, 65))
        gT = rng.uniform(0, 20) or 1.0
        worst = max(worst, echo_residual(_random_state(rng), gT / cfg.g, n, CoupledModeSystem(cfg.g)))
    return worst <= 1e-9, f"max defect {worst:.2e} (tol 1e-9)"


def check_reversal(rng, cfg) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(200):
        h = BlochHamiltonian(rng.uniform(0, 10), math.pi / 2, rng.uniform(0, 2 * math.pi))
        worst = max(worst, reversal_residual(h, rng.uniform(-10, 10)))
    control = reversal_residual(BlochHamiltonian(2.0, 0.0, 0.0), math.pi / 4)
    return worst <= 1e-12 and control > 0.5, f"max residual {worst:.2e}; theta=0 control {control:.3f}"


def check_oracle(rng, cfg) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(1000):
        h = BlochHamiltonian(rng.uniform(0, 10), rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        t = rng.uniform(-5, 5)
        worst = max(worst, float(np.max(np.abs(bloch_propagator(h, t).m - matrix_exp_oracle(h.matrix, t)))))
        sys = CoupledModeSystem(rng.uniform(0.1, 10))
        hop = sys.g * np.array([[0, 1], [1, 0]])
        worst = max(worst, float(np.max(np.abs(coupled_mode_propagator(sys, t).m - matrix_exp_oracle(hop, t)))))
    return worst <= 1e-10, f"max elementwise gap {worst:.2e} (tol 1e-10)"


def check_figure1(rng, cfg) -> tuple[bool, str]:
    fig_cfg = cfg.with_overrides(**{"initial_state.theta0": 0.0, "initial_state.phi0": 0.0, "convention": "paper"})
    free, kicked = run_figure1(fig_cfg)
    c_kicked = kicked.column("concurrence")[-1]
    c_free = free.column("concurrence")[-1]
    ok = abs(c_kicked) <= 1e-9 and abs(c_free - abs(math.sin(1.2)) / 2) <= 1e-9
    return ok, f"C_kicked(0.6)={c_kicked:.3e}, C_free(0.6)={c_free:.9f}"


def check_figure2(rng, cfg) -> tuple[bool, str]:
    fig_cfg = cfg.with_overrides(**{"initial_state.theta0": 0.0, "initial_state.phi0": 0.0, "convention": "paper"})
    ds = run_figure2(fig_cfg)
    c, k = ds.column("concurrence"), ds.column("kicks")
    c0 = c[0]
    cap = abs(math.sin(0.2)) / 2
    # first sample carrying each even kick count is the post-kick sample
    after_even = [c[k.index(n)] for n in sorted(set(k)) if n and n % 2 == 0]
    ok = bool(after_even) and all(abs(x - c0) <= 1e-9 for x in after_even) and max(c) <= cap + 1e-9
    return ok, f"max C {max(c):.9f} (cap {cap:.9f}); C after even kicks {after_even}"


def check_sweep(rng, cfg) -> tuple[bool, str]:
    sw_cfg = cfg.with_overrides(**{
        "initial_state.theta0": 0.0, "initial_state.phi0": 0.0, "convention": "paper",
        "protocol": {"gT": math.pi / 2}, "oracle.enabled": False,
    })
    ns = [2, 4, 8, 16, 32, 64]
    dev = sweep_n(sw_cfg, ns).column("deviation")
    closed = [abs(math.sin(math.pi / n)) / 2 for n in ns]
    gap = max(abs(a - b) for a, b in zip(dev, closed))
    decreasing = all(b < a for a, b in zip(dev, dev[1:]))
    ratios = [dev[i + 1] / dev[i] for i in range(len(ns) - 1) if ns[i] >= 16]
    halves = all(abs(r - 0.5) <= 0.05 for r in ratios)
    return gap <= 1e-9 and decreasing and halves, f"closed-form gap {gap:.2e}; ratios {[round(r, 4) for r in ratios]}"


def check_pulse(rng, cfg) -> tuple[bool, str]:
    g = 1.0e3
    s0 = SubspaceState(1, 0)
    sched = explicit_schedule(0.4 / g, [0.1 / g, 0.2 / g, 0.3 / g])
    ideal = evolve_kicked(s0, sched, CoupledModeSystem(g), 10)
    frozen = finite_pulse_trajectory(s0, sched, g, 1e3 * g, freeze_hopping=True, samples_per_segment=10)
    worst = max(
        trace_distance(two_mode_density(a.state.density()), two_mode_density(b.rho2, b.p00))
        for a, b in zip(ideal, frozen)
    )
    base = config_from_dict({"g": g, "oracle": {"enabled": True}, "sampling": {"points_per_segment": 1}})
    sweep = sweep_gamma(base, [10, 1e2, 1e3, 1e4], sched)
    td = sweep.column("trace_distance")
    monotone = all(b < a for a, b in zip(td, td[1:]))
    pulsed = finite_pulse_trajectory(s0, sched, g, base.oracle.gamma)
    c_err = abs(pulsed[-1].concurrence - concurrence_pure(ideal.final_state))
    ok = worst <= 1e-10 and monotone and c_err <= 1e-2
    return ok, f"frozen gap {worst:.1e}; sweep {[f'{x:.1e}' for x in td]}; default-regime dC {c_err:.1e}"


def check_units(rng, cfg) -> tuple[bool, str]:
    d = config_from_dict({})
    T = d.total_time
    ok = d.g == 1.0e3 and T == math.pi / (2 * 1.0e3) and 1e-3 <= T < 1e-2
    return ok, f"g={d.g:g}, T={T:.4e} s"


def check_determinism(rng, cfg) -> tuple[bool, str]:
    a = [render(d, f) for d in run_figure1(cfg) for f in ("csv", "json")]
    b = [render(d, f) for d in run_figure1(cfg) for f in ("csv", "json")]
    return a == b, "identical renders" if a == b else "renders differ"


CHECKS: list[tuple[str, Callable]] = [
    ("echo identity", check_echo),
    ("reversal identity", check_reversal),
    ("oracle equivalence", check_oracle),
    ("figure 1 structure", check_figure1),
    ("figure 2 structure", check_figure2),
    ("large-N limit", check_sweep),
    ("kick realization", check_pulse),
    ("physical units", check_units),
    ("determinism", check_determinism),
]


def run_checks(cfg: Optional[ExperimentConfig] = None, seed: int = 0) -> list[CheckResult]:
    cfg = config_from_dict({}) if cfg is None else cfg
    rng = np.random.default_rng(seed)
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn(rng, cfg)
        except Exception as exc:  # a crash is a failed check, not an aborted run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out
