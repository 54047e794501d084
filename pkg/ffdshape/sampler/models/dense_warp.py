from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ffdshape.arrays import FloatArray
from ffdshape.grids.models.normalized_coord import regular_grid


class DenseWarp(BaseModel):
    """
    Per-pixel lookup coordinates (normalized space) of a backward warp
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: FloatArray = Field(description="H x W lookup x-coordinates")
    y: FloatArray = Field(description="H x W lookup y-coordinates")

    @model_validator(mode="after")
    def validate_fields(self) -> "DenseWarp":
        if self.x.ndim != 2 or self.x.shape != self.y.shape:
            raise ValueError(
                f"x and y must be equal 2D fields, got {self.x.shape} and {self.y.shape}"
            )
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise ValueError("dense warp contains non-finite values")
        return self

    @property
    def height(self) -> int:
        return int(self.x.shape[0])

    @property
    def width(self) -> int:
        return int(self.x.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    @staticmethod
    def identity(height: int, width: int) -> "DenseWarp":
        x, y = regular_grid(height, width)
        return DenseWarp(x=x, y=y)
