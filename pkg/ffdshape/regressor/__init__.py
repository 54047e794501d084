from ffdshape.regressor.checkpoint_io import load_checkpoint, save_checkpoint
from ffdshape.regressor.inference import predict
from ffdshape.regressor.models import (
    PARAMETER_ORDER,
    Architecture,
    Checkpoint,
    CheckpointHeader,
    RegressorParams,
)
from ffdshape.regressor.regressor import (
    ForwardCache,
    RegressorOutput,
    adam_step,
    backward,
    forward,
    init_params,
    sum_gradients,
)
from ffdshape.regressor.regressor_errors import CheckpointError, RegressorError

__all__ = [
    "Architecture",
    "Checkpoint",
    "CheckpointError",
    "CheckpointHeader",
    "ForwardCache",
    "PARAMETER_ORDER",
    "RegressorError",
    "RegressorOutput",
    "RegressorParams",
    "adam_step",
    "backward",
    "forward",
    "init_params",
    "load_checkpoint",
    "predict",
    "save_checkpoint",
    "sum_gradients",
]
