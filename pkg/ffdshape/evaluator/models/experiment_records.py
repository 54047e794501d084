from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field

from ffdshape.grids.models.rect_mask import RectMask
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.differential_warp import DifferentialWarp
from ffdshape.sampler.models.dense_warp import DenseWarp


class InferenceResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    control: ControlWarp
    warped: Silhouette
    lookup: DenseWarp = Field(description="Dense lookup the source was resampled with")
    raw: DifferentialWarp
    theta: Union[float, None] = None


class AgnosticismScore(BaseModel):
    """How much the regressed warp changes across partial versions of one target"""

    model_config = ConfigDict(frozen=True)

    variants: int = Field(ge=2, description="Full target plus each masked version")
    mean_pairwise_iou: float = Field(ge=0, le=1)
    mean_warp_difference: float = Field(ge=0)


class StressRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    requested_fraction: float = Field(ge=0, lt=1)
    achieved_fraction: float = Field(ge=0, le=1)
    mask: Union[RectMask, None] = None
    iou: float = Field(ge=0, le=1, description="Warped from the occluded input vs full target")
    iou_identity: float = Field(ge=0, le=1)


class GridSweepRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    n: int = Field(ge=2)
    iou: float = Field(ge=0, le=1)
    smoothness: float = Field(ge=0)
    total: float = Field(ge=0)
    iters_run: int = Field(ge=1)


class GridSweepReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: List[GridSweepRecord]
