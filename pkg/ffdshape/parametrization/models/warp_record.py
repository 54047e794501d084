from typing import Union

from pydantic import BaseModel, ConfigDict, Field

from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.differential_warp import DifferentialWarp


class WarpRecord(BaseModel):
    """
    On-disk description of a computed warp: enough to rebuild the dense lookup field
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    height: int = Field(ge=2, description="Image height the warp was computed for")
    width: int = Field(ge=2, description="Image width the warp was computed for")
    mode: RegularizationMode = Field(default=RegularizationMode.TV_MONOTONIC)
    control: ControlWarp
    delta: Union[DifferentialWarp, None] = Field(
        default=None, description="Raw differential the control warp was built from"
    )
    theta: Union[float, None] = Field(
        default=None, description="Global rotation (radians) composed after the grid"
    )

    def save(self, path: str) -> None:
        with open(path, "w") as file:
            file.write(self.model_dump_json(indent=2))

    @staticmethod
    def load(path: str) -> "WarpRecord":
        with open(path) as file:
            return WarpRecord.model_validate_json(file.read())
