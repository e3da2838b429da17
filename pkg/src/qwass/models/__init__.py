from .operators import (
    TraceConvention,
    HermitianOperator,
    DensityOperator,
    Spectrum,
    OperatorBasis,
    Superoperator,
    OperatorVector,
)
from .lindblad import JumpTerm, LindbladGenerator, GeneratorReport
from .gaussian import GaussianState, GaussianMixture, GaussianTangent, symplectic_form
from .trajectory import WassersteinInfoMatrix, FlowTrajectory, BridgePath, EquivalenceReport
from .run import Command, OptimizerMode, RunConfig, RunManifest

__all__ = [
    "TraceConvention",
    "HermitianOperator",
    "DensityOperator",
    "Spectrum",
    "OperatorBasis",
    "Superoperator",
    "OperatorVector",
    "JumpTerm",
    "LindbladGenerator",
    "GeneratorReport",
    "GaussianState",
    "GaussianMixture",
    "GaussianTangent",
    "symplectic_form",
    "WassersteinInfoMatrix",
    "FlowTrajectory",
    "BridgePath",
    "EquivalenceReport",
    "Command",
    "OptimizerMode",
    "RunConfig",
    "RunManifest",
]
