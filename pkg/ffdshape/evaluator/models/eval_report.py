from typing import List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from ffdshape.evaluator.enums.mask_protocol import MaskProtocol
from ffdshape.grids.models.rect_mask import RectMask

RECORD_COLUMNS = [
    "pair_id",
    "source_item",
    "target_item",
    "mask",
    "iou_partial_input",
    "iou_full_input",
    "iou_identity",
    "smoothness",
    "warp_consistency",
]


class PairRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    pair_id: str
    source_item: str
    target_item: str
    mask: Union[RectMask, None] = None
    iou_partial_input: float = Field(
        ge=0, le=1, description="Warped from the partial input vs full target"
    )
    iou_full_input: float = Field(
        ge=0, le=1, description="Warped from the full input vs full target"
    )
    iou_identity: float = Field(ge=0, le=1, description="Unwarped source vs full target")
    smoothness: float = Field(ge=0, description="TV-identity value of the partial-input warp")
    warp_consistency: float = Field(
        ge=0, description="Max-abs control grid difference between partial and full inputs"
    )

    def mask_descriptor(self) -> str:
        if self.mask is None:
            return "none"
        return (
            f"{self.mask.center_row}:{self.mask.center_col}:"
            f"{self.mask.mask_height}x{self.mask.mask_width}"
        )

    def as_row(self) -> list:
        return [
            self.pair_id,
            self.source_item,
            self.target_item,
            self.mask_descriptor(),
            repr(self.iou_partial_input),
            repr(self.iou_full_input),
            repr(self.iou_identity),
            repr(self.smoothness),
            repr(self.warp_consistency),
        ]


def _mean(values: List[float]) -> Union[float, None]:
    return float(np.mean(values)) if values else None


class EvalReport(BaseModel):
    """
    Per-pair test set metrics, sorted by pair id, with their means
    """

    model_config = ConfigDict(frozen=True)

    protocol: MaskProtocol
    records: List[PairRecord]

    @computed_field  # type: ignore[misc]
    @property
    def count(self) -> int:
        return len(self.records)

    @computed_field  # type: ignore[misc]
    @property
    def mean_iou_partial_input(self) -> Union[float, None]:
        return _mean([r.iou_partial_input for r in self.records])

    @computed_field  # type: ignore[misc]
    @property
    def mean_iou_full_input(self) -> Union[float, None]:
        return _mean([r.iou_full_input for r in self.records])

    @computed_field  # type: ignore[misc]
    @property
    def mean_iou_identity(self) -> Union[float, None]:
        return _mean([r.iou_identity for r in self.records])

    @computed_field  # type: ignore[misc]
    @property
    def mean_smoothness(self) -> Union[float, None]:
        return _mean([r.smoothness for r in self.records])

    @computed_field  # type: ignore[misc]
    @property
    def mean_warp_consistency(self) -> Union[float, None]:
        return _mean([r.warp_consistency for r in self.records])
