"""Nonlinear oscillator with a position-dependent mass.

Three independent trajectory producers (closed forms, implicit inversion,
adaptive Runge-Kutta) plus energy-regime classification, built so each can
cross-check the others.
"""

from ._backend import BACKEND
from .closed_form import (
    ClosedFormSolution,
    Family,
    evaluate,
    from_energy,
    omega_of_amplitude,
    residual,
)
from .dynamics import Trajectory, acceleration, integrate, p_squared, turning_points
from .errors import (
    BranchMismatchError,
    ConvergenceError,
    DomainError,
    InconsistentAmplitudeError,
    MassSingularityError,
    MloscError,
    StepSizeUnderflowError,
    UnreachableError,
)
from .implicit import (
    ImplicitBranchNeg,
    ImplicitBranchPos,
    branch_neg,
    branch_pos,
    half_period,
    t_of_x_neg,
    t_of_x_pos,
    x_of_t,
)
from .model import (
    ModelParams,
    OscillatorKind,
    State,
    C_to_energy,
    energy_from_state,
    energy_to_C,
)
from .potential import (
    EnergyRegime,
    G1Row,
    G2Row,
    PotentialShape,
    V,
    classify_energy,
    dV,
    shape,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BranchMismatchError",
    "C_to_energy",
    "ClosedFormSolution",
    "ConvergenceError",
    "DomainError",
    "EnergyRegime",
    "Family",
    "G1Row",
    "G2Row",
    "ImplicitBranchNeg",
    "ImplicitBranchPos",
    "InconsistentAmplitudeError",
    "MassSingularityError",
    "MloscError",
    "ModelParams",
    "OscillatorKind",
    "PotentialShape",
    "State",
    "StepSizeUnderflowError",
    "Trajectory",
    "UnreachableError",
    "V",
    "acceleration",
    "branch_neg",
    "branch_pos",
    "classify_energy",
    "dV",
    "energy_from_state",
    "energy_to_C",
    "evaluate",
    "from_energy",
    "half_period",
    "integrate",
    "omega_of_amplitude",
    "p_squared",
    "residual",
    "shape",
    "t_of_x_neg",
    "t_of_x_pos",
    "turning_points",
    "x_of_t",
    "__version__",
]
