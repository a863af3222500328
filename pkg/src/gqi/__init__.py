"""Gaussian quantum illumination: decay constants from monotone metrics on Gaussian states."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CutoffError,
    DecompositionError,
    DimensionError,
    GQIError,
    InvalidStateError,
    PreconditionError,
    SingularMetricError,
)
from .illumination import (  # noqa: E402
    DecayConstants,
    QIScenario,
    coherent_benchmark,
    decay_general,
    decay_large_nb,
    decay_thm1,
    quantum_advantage,
    returned_tangent,
    scenario_decay,
)
from .metric import F_COL, F_LOC, F_SLD, MonotoneFunction, TangentVector, metric_general  # noqa: E402
from .symplectic import GaussianState, coherent, thermal, tmsv, vacuum, williamson  # noqa: E402

__all__ = [
    "CutoffError",
    "DecompositionError",
    "DimensionError",
    "GQIError",
    "InvalidStateError",
    "PreconditionError",
    "SingularMetricError",
    "DecayConstants",
    "QIScenario",
    "coherent_benchmark",
    "decay_general",
    "decay_large_nb",
    "decay_thm1",
    "quantum_advantage",
    "returned_tangent",
    "scenario_decay",
    "F_COL",
    "F_LOC",
    "F_SLD",
    "MonotoneFunction",
    "TangentVector",
    "metric_general",
    "GaussianState",
    "coherent",
    "thermal",
    "tmsv",
    "vacuum",
    "williamson",
]
