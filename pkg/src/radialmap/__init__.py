"""Radial Coulomb and oscillator systems, their supersymmetric and
quantum-defect variants, and quadratic maps between them."""
from .errors import AccuracyError, ConsistencyError, DefectRangeError, DomainError, SolverError
from .systems import (
    UNIT_SCALES,
    CoulombQN,
    OscillatorQN,
    PhysicalScales,
    RadialState,
    coulomb_energy,
    coulomb_state,
    oscillator_energy,
    oscillator_state,
)
from .sqdt import SODIUM, CoulombDefectProfile, OscillatorDefectProfile
from .mapping import MapSpec, classic_map, general_map, sodium_table
from .continuum import continuum_map

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "ConsistencyError", "DefectRangeError", "DomainError", "SolverError",
    "UNIT_SCALES", "CoulombQN", "OscillatorQN", "PhysicalScales", "RadialState",
    "coulomb_energy", "coulomb_state", "oscillator_energy", "oscillator_state",
    "SODIUM", "CoulombDefectProfile", "OscillatorDefectProfile",
    "MapSpec", "classic_map", "general_map", "sodium_table", "continuum_map",
]
