import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ffdshape.arrays import FloatArray


class ControlWarp(BaseModel):
    """
    m x n grid of absolute lookup coordinates in normalized space (the free-form deformation)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: FloatArray = Field(description="m x n lookup x-coordinates")
    y: FloatArray = Field(description="m x n lookup y-coordinates")

    @model_validator(mode="after")
    def validate_grids(self) -> "ControlWarp":
        if self.x.ndim != 2 or self.x.shape != self.y.shape:
            raise ValueError(
                f"x and y must be equal 2D grids, got {self.x.shape} and {self.y.shape}"
            )
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise ValueError("control warp contains non-finite values")
        return self

    @computed_field  # type: ignore[misc]
    @property
    def m(self) -> int:
        return int(self.x.shape[0])

    @computed_field  # type: ignore[misc]
    @property
    def n(self) -> int:
        return int(self.x.shape[1])

    def is_axially_monotonic(self) -> bool:
        """x non-decreasing along every row and y non-decreasing along every column."""
        return bool(
            np.all(np.diff(self.x, axis=1) >= 0) and np.all(np.diff(self.y, axis=0) >= 0)
        )

    def max_abs_difference(self, other: "ControlWarp") -> float:
        return float(
            max(np.max(np.abs(self.x - other.x)), np.max(np.abs(self.y - other.y)))
        )
