from typing import Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ffdshape.arrays import FloatArray


class DifferentialWarp(BaseModel):
    """
    Per-axis increments between neighbouring control nodes plus one offset per axis.
    Integrating dx along rows and dy along columns recovers the absolute control grid.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dx: FloatArray = Field(description="m x n horizontal increments")
    dy: FloatArray = Field(description="m x n vertical increments")
    offset_x: float = Field(default=0.0, description="Offset of the x integration")
    offset_y: float = Field(default=0.0, description="Offset of the y integration")

    @model_validator(mode="after")
    def validate_grids(self) -> "DifferentialWarp":
        if self.dx.ndim != 2 or self.dx.shape != self.dy.shape:
            raise ValueError(
                f"dx and dy must be equal 2D grids, got {self.dx.shape} and {self.dy.shape}"
            )
        if not (
            np.all(np.isfinite(self.dx))
            and np.all(np.isfinite(self.dy))
            and np.isfinite(self.offset_x)
            and np.isfinite(self.offset_y)
        ):
            raise ValueError("differential warp contains non-finite values")
        return self

    @computed_field  # type: ignore[misc]
    @property
    def m(self) -> int:
        return int(self.dx.shape[0])

    @computed_field  # type: ignore[misc]
    @property
    def n(self) -> int:
        return int(self.dx.shape[1])

    def is_nonnegative(self) -> bool:
        return bool(np.all(self.dx >= 0) and np.all(self.dy >= 0))

    def as_arrays(self) -> Dict[str, np.ndarray]:
        return {
            "dx": np.array(self.dx),
            "dy": np.array(self.dy),
            "offset_x": np.array(self.offset_x),
            "offset_y": np.array(self.offset_y),
        }

    @staticmethod
    def from_arrays(arrays: Dict[str, np.ndarray]) -> "DifferentialWarp":
        return DifferentialWarp(
            dx=arrays["dx"],
            dy=arrays["dy"],
            offset_x=float(arrays["offset_x"]),
            offset_y=float(arrays["offset_y"]),
        )

    def __add__(self, other: "DifferentialWarp") -> "DifferentialWarp":
        return DifferentialWarp(
            dx=self.dx + other.dx,
            dy=self.dy + other.dy,
            offset_x=self.offset_x + other.offset_x,
            offset_y=self.offset_y + other.offset_y,
        )

    def scaled(self, factor: float) -> "DifferentialWarp":
        return DifferentialWarp(
            dx=self.dx * factor,
            dy=self.dy * factor,
            offset_x=self.offset_x * factor,
            offset_y=self.offset_y * factor,
        )
