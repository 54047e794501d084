from typing import Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ffdshape.arrays import FloatArray
from ffdshape.regressor.models.architecture import Architecture

PARAMETER_ORDER: List[str] = [
    "conv1_weight",
    "conv1_bias",
    "conv2_weight",
    "conv2_bias",
    "conv3_weight",
    "conv3_bias",
    "conv4_weight",
    "conv4_bias",
    "fc1_weight",
    "fc1_bias",
    "fc2_weight",
    "fc2_bias",
    "w0_x",
    "w0_y",
]


class RegressorParams(BaseModel):
    """
    Trainable weights of the warp regressor, in the fixed checkpoint order
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    architecture: Architecture
    conv1_weight: FloatArray
    conv1_bias: FloatArray
    conv2_weight: FloatArray
    conv2_bias: FloatArray
    conv3_weight: FloatArray
    conv3_bias: FloatArray
    conv4_weight: FloatArray
    conv4_bias: FloatArray
    fc1_weight: FloatArray
    fc1_bias: FloatArray
    fc2_weight: FloatArray
    fc2_bias: FloatArray
    w0_x: FloatArray
    w0_y: FloatArray

    @model_validator(mode="after")
    def validate_shapes(self) -> "RegressorParams":
        expected = self.architecture.parameter_shapes()
        for name in PARAMETER_ORDER:
            value = getattr(self, name)
            if value.shape != tuple(expected[name]):
                raise ValueError(f"{name} has shape {value.shape}, expected {expected[name]}")
            if not np.all(np.isfinite(value)):
                raise ValueError(f"{name} contains non-finite values")
        return self

    def as_arrays(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in PARAMETER_ORDER}

    @staticmethod
    def from_arrays(architecture: Architecture, arrays: Dict[str, np.ndarray]) -> "RegressorParams":
        return RegressorParams(
            architecture=architecture, **{name: arrays[name] for name in PARAMETER_ORDER}
        )

    def count(self) -> int:
        return int(sum(getattr(self, name).size for name in PARAMETER_ORDER))
