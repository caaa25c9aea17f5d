"""Search on the complete graph by random and quantum walks."""

from .errors import (
    ContractError,
    ConvergenceError,
    DimensionError,
    DomainError,
    InstanceError,
    NumericError,
    WalkSearchError,
)
from .model import (
    ArcState,
    CompleteGraphInstance,
    EvolutionRecord,
    ProbabilityState,
    VertexAmplitudeState,
    uniform_distribution,
    uniform_superposition_arcs,
    uniform_superposition_vertices,
    vertex_probability,
)

__version__ = "0.1.0"
