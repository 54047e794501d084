from typing import Any, Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field

from ffdshape.optim.adam import AdamState
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.regressor.models.architecture import Architecture
from ffdshape.regressor.models.regressor_params import RegressorParams

CHECKPOINT_FORMAT_VERSION = 1


class ParameterEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    shape: List[int]


class CheckpointHeader(BaseModel):
    """JSON header preceding the little-endian float32 blob."""

    model_config = ConfigDict(frozen=True)

    format_version: int = Field(default=CHECKPOINT_FORMAT_VERSION)
    architecture: Architecture
    mode: RegularizationMode
    step: int = Field(ge=0, description="Training steps applied to these parameters")
    config: Dict[str, Any] = Field(
        default_factory=dict, description="Echo of the configuration that produced it"
    )
    parameters: List[ParameterEntry]
    optimizer_step: Union[int, None] = Field(
        default=None, description="ADAM step counter when moments follow the parameters"
    )
    dtype: str = Field(default="<f4")


class Checkpoint(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    header: CheckpointHeader
    params: RegressorParams
    adam_state: Union[AdamState, None] = None

    @property
    def step(self) -> int:
        return self.header.step

    @property
    def mode(self) -> RegularizationMode:
        return self.header.mode
