from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field

from ffdshape.grids.models.rect_mask import RectMask
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.trainer.models.dataset import Dataset


class LoadedDataset(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dataset: Dataset
    train: List[Silhouette]
    test: List[Silhouette]


class TrainingSample(BaseModel):
    """One sampled pair: the loss compares against full_target, the network sees partial_target."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    source: Silhouette
    full_target: Silhouette
    partial_target: Silhouette
    source_index: int = Field(ge=0)
    target_index: int = Field(ge=0)
    mask: Union[RectMask, None] = None
