"""Bang-bang sigma_z kicks that freeze one-excitation dynamics of two coupled modes."""

__version__ = "0.1.0"

from .subspace import (  # noqa: E402
    BlochHamiltonian,
    CoupledModeSystem,
    Propagator2,
    SubspaceState,
    apply,
    bloch_propagator,
    coupled_mode_propagator,
    make_initial_state,
    matrix_exp_oracle,
    sigma_z_kick,
)
from .sequencer import (  # noqa: E402
    KickSchedule,
    Trajectory,
    echo_residual,
    evolve_kicked,
    reversal_residual,
    uniform_schedule,
)
from .metrics import (  # noqa: E402
    AmplitudePair,
    amplitudes,
    concurrence_mixed,
    concurrence_pure,
    fidelity,
    trace_distance,
)
from .fullspace import (  # noqa: E402
    FullSpaceDensity,
    PulseParams,
    finite_pulse_trajectory,
    full_hamiltonian,
    kick_via_atom,
    pulse_propagator,
)

__all__ = [
    "AmplitudePair", "BlochHamiltonian", "CoupledModeSystem", "FullSpaceDensity", "KickSchedule",
    "Propagator2", "PulseParams", "SubspaceState", "Trajectory", "amplitudes", "apply",
    "bloch_propagator", "concurrence_mixed", "concurrence_pure", "coupled_mode_propagator",
    "echo_residual", "evolve_kicked", "fidelity", "finite_pulse_trajectory", "full_hamiltonian",
    "kick_via_atom", "make_initial_state", "matrix_exp_oracle", "pulse_propagator",
    "reversal_residual", "sigma_z_kick", "trace_distance", "uniform_schedule",
]
