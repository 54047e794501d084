from ffdshape.regressor.models.architecture import Architecture, LayerShape
from ffdshape.regressor.models.checkpoint import Checkpoint, CheckpointHeader, ParameterEntry
from ffdshape.regressor.models.regressor_params import PARAMETER_ORDER, RegressorParams

__all__ = [
    "Architecture",
    "Checkpoint",
    "CheckpointHeader",
    "LayerShape",
    "PARAMETER_ORDER",
    "ParameterEntry",
    "RegressorParams",
]
