"""Device-independent dimension bounds for prepare-and-measure behaviours."""

from .behaviour import (
    Behaviour,
    DimensionBoundReport,
    Scenario,
    Witness,
    dimension_lower_bound,
    shifted_witness_bound,
    svd_witness,
    validate_behaviour,
    witness_bound,
)
from .classical import (
    DeterministicStrategy,
    classical_witness_max,
    deterministic_behaviour,
    enumerate_vertices,
    extremal_block_behaviour,
)
from .errors import DimwitError, DomainError, SizeError, ValidationError
from .linalg import hermitian_eig, inner_product, schatten_norm, svd
from .quantum import QuantumModel, helstrom_measurement, model_dimension, quantum_behaviour

__version__ = "0.1.0"

__all__ = [
    "Behaviour",
    "DeterministicStrategy",
    "DimensionBoundReport",
    "DimwitError",
    "DomainError",
    "QuantumModel",
    "Scenario",
    "SizeError",
    "ValidationError",
    "Witness",
    "classical_witness_max",
    "deterministic_behaviour",
    "dimension_lower_bound",
    "enumerate_vertices",
    "extremal_block_behaviour",
    "helstrom_measurement",
    "hermitian_eig",
    "inner_product",
    "model_dimension",
    "quantum_behaviour",
    "schatten_norm",
    "shifted_witness_bound",
    "svd",
    "svd_witness",
    "validate_behaviour",
    "witness_bound",
]
