from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.losses.loss_report import LossReport
from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.differential_warp import DifferentialWarp


class AlignmentResult(BaseModel):
    """
    Best warp found by direct optimization of one source/target pair
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    control: ControlWarp
    delta: DifferentialWarp = Field(description="Raw differential of the best iterate")
    warped: Silhouette = Field(description="Source resampled with the best warp")
    loss_trace: List[LossReport]
    iters_run: int = Field(ge=1)
    converged: bool
    theta: Union[float, None] = Field(default=None, description="Recovered rotation (radians)")

    @model_validator(mode="after")
    def validate_trace(self) -> "AlignmentResult":
        if not self.loss_trace:
            raise ValueError("loss trace must not be empty")
        return self

    @property
    def best_total(self) -> float:
        return min(report.total for report in self.loss_trace)
