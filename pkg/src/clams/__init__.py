"""clams - Cascaded-Lambda Atomic Manifold Simulator.

Numerical toolkit for driven multilevel atoms arranged in a cascaded-Lambda
chain: rotating-frame Hamiltonians, rate-based master-equation steady states,
the reduced non-Hermitian ground-manifold dynamics with imaginary hopping,
coherence power-spectrum peaks and height ratios, perturbative multi-photon
transition rates, and the full 16-state Zeeman model of the driven Rb-85 D2
line.
"""
from .effective import (
    ClosedFormCoherences,
    EffectiveGenerator,
    EffectiveParams,
    anti_pt_defect,
    build_effective_generator,
    closed_form_coherences,
    effective_steady_state,
    hopping_matrix,
    reduce,
)
from .level_system import (
    SystemParams,
    build_rotating_hamiltonian,
    detunings_from_energies,
    ground_indices,
    is_excited,
    is_ground,
    parity,
    raman_detunings,
    rotating_phase,
)
from .liouvillian import (
    CouplingGraph,
    DegenerateSteadyStateError,
    DensityMatrix,
    GeneratorMatrix,
    PropagationError,
    SteadyStateError,
    build_generator,
    cascaded_lambda_graph,
    propagate,
    steady_state,
)
from .rates import RateResult, rate_ratio, transition_amplitude
from .spectrum import (
    DEFAULT_DISPLAY_THRESHOLD,
    HeightRatios,
    LogLinearFit,
    Peak,
    PeakSet,
    broadened_spectrum,
    coherence_peaks,
    height_ratios,
    loglinear_fit,
    visible_peaks,
)
from .units import angular_to_mhz, mhz_to_angular

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # level system
    "SystemParams",
    "parity",
    "is_ground",
    "is_excited",
    "ground_indices",
    "build_rotating_hamiltonian",
    "rotating_phase",
    "raman_detunings",
    "detunings_from_energies",
    # master equation
    "CouplingGraph",
    "GeneratorMatrix",
    "DensityMatrix",
    "build_generator",
    "cascaded_lambda_graph",
    "steady_state",
    "propagate",
    "SteadyStateError",
    "DegenerateSteadyStateError",
    "PropagationError",
    # reduced dynamics
    "EffectiveParams",
    "EffectiveGenerator",
    "ClosedFormCoherences",
    "build_effective_generator",
    "reduce",
    "effective_steady_state",
    "closed_form_coherences",
    "anti_pt_defect",
    "hopping_matrix",
    # rates
    "RateResult",
    "transition_amplitude",
    "rate_ratio",
    # spectrum
    "Peak",
    "PeakSet",
    "HeightRatios",
    "LogLinearFit",
    "coherence_peaks",
    "height_ratios",
    "loglinear_fit",
    "broadened_spectrum",
    "visible_peaks",
    "DEFAULT_DISPLAY_THRESHOLD",
    # units
    "mhz_to_angular",
    "angular_to_mhz",
]
