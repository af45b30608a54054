"""Composite-pulse Householder reflections for star-coupled N-pod systems.

Exact two-level and (N+1)-level propagators, broadband and universal
composite phase families, phase-gate synthesis, and infidelity scans over
pulse area and detuning.
"""

from .composite import (
    GateSequence,
    PhaseList,
    bb_phases,
    compose,
    composite_phase_gate,
    family_from_config,
    family_to_config,
    gate_sequence,
    sequence_propagator,
    universal_phases,
)
from .errors import ValidationError
from .linalg import expm_hermitian, frobenius_distance, unitarity_defect
from .metrics import (
    AXIS_AREA,
    AXIS_DETUNING,
    ScanAxis,
    ScanGrid,
    ScanResult,
    bb_infidelity_analytic,
    composite_amplitudes,
    infidelity,
    scan_2d,
    scan_area,
)
from .npod import (
    HouseholderTarget,
    MSReduction,
    NPodSystem,
    composite_hr,
    householder_matrix,
    manifold_block,
    ms_reduce,
    npod_hamiltonian,
    npod_propagator,
    pulse_propagator,
    random_system,
    system_from_config,
    system_to_config,
)
from .two_level import (
    Propagator2,
    PulseShape,
    PulseSpec,
    apply_phase,
    constant_propagator,
    gaussian,
    pulse_with_area,
    rectangular,
    resonant_propagator,
    shaped_propagator,
    tabulated,
)

__version__ = "0.1.0"

__all__ = [
    "AXIS_AREA",
    "AXIS_DETUNING",
    "GateSequence",
    "HouseholderTarget",
    "MSReduction",
    "NPodSystem",
    "PhaseList",
    "Propagator2",
    "PulseShape",
    "PulseSpec",
    "ScanAxis",
    "ScanGrid",
    "ScanResult",
    "ValidationError",
    "apply_phase",
    "bb_infidelity_analytic",
    "bb_phases",
    "compose",
    "composite_amplitudes",
    "composite_hr",
    "composite_phase_gate",
    "constant_propagator",
    "expm_hermitian",
    "family_from_config",
    "family_to_config",
    "frobenius_distance",
    "gate_sequence",
    "gaussian",
    "householder_matrix",
    "infidelity",
    "manifold_block",
    "ms_reduce",
    "npod_hamiltonian",
    "npod_propagator",
    "pulse_propagator",
    "pulse_with_area",
    "random_system",
    "rectangular",
    "resonant_propagator",
    "scan_2d",
    "scan_area",
    "sequence_propagator",
    "shaped_propagator",
    "system_from_config",
    "system_to_config",
    "tabulated",
    "unitarity_defect",
    "universal_phases",
    "__version__",
]
