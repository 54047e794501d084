from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field

from ffdshape.losses.loss_report import LossReport
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode


class EpochRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    epoch: int = Field(ge=0)
    step: int = Field(ge=0, description="Steps applied when the epoch ended")
    mean_total: float
    heldout_iou: Union[float, None] = None
    identity_iou: Union[float, None] = Field(
        default=None, description="Held-out IOU of the unwarped source, the baseline"
    )
    smoothness: Union[float, None] = Field(
        default=None, description="Mean TV-identity value of the held-out warps"
    )


class TrainingSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    checkpoint_path: str
    start_step: int = Field(ge=0)
    final_step: int = Field(ge=0)
    last_report: Union[LossReport, None] = None
    epochs: List[EpochRecord] = Field(default_factory=list)

    @property
    def final_epoch(self) -> Union[EpochRecord, None]:
        return self.epochs[-1] if self.epochs else None


class AblationRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: RegularizationMode
    checkpoint_path: str
    heldout_iou: Union[float, None]
    identity_iou: Union[float, None]
    smoothness: Union[float, None]
    smoothness_trace: List[Union[float, None]] = Field(default_factory=list)

    @property
    def smoothness_growth(self) -> Union[float, None]:
        """Final held-out smoothness over its value after the first epoch."""
        if not self.smoothness_trace:
            return None
        first, last = self.smoothness_trace[0], self.smoothness_trace[-1]
        if first is None or last is None or first <= 0.0:
            return None
        return last / first
