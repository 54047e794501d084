from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from ffdshape.arrays import FloatArray, as_frozen_array

VALUE_TOLERANCE = 1e-9
FOREGROUND_THRESHOLD = 0.5


class Silhouette(BaseModel):
    """
    Dense grayscale field in [0, 1] describing a binary shape image (0 background, 1 foreground)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: FloatArray

    @field_validator("values")
    @classmethod
    def validate_values(cls, values: np.ndarray) -> np.ndarray:
        if values.ndim != 2:
            raise ValueError(f"silhouette must be 2D, got shape {values.shape}")
        if values.shape[0] < 2 or values.shape[1] < 2:
            raise ValueError(f"silhouette must be at least 2x2, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("silhouette contains non-finite values")
        low, high = float(values.min()), float(values.max())
        if low < -VALUE_TOLERANCE or high > 1.0 + VALUE_TOLERANCE:
            raise ValueError(f"silhouette values outside [0,1]: [{low}, {high}]")
        if low < 0.0 or high > 1.0:
            return as_frozen_array(np.clip(values, 0.0, 1.0))
        return values

    @property
    def height(self) -> int:
        return int(self.values.shape[0])

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    def binarize(self, threshold: float = FOREGROUND_THRESHOLD) -> np.ndarray:
        return self.values > threshold  # type: ignore

    def foreground_count(self, threshold: float = FOREGROUND_THRESHOLD) -> int:
        return int(np.count_nonzero(self.binarize(threshold)))

    @staticmethod
    def zeros(height: int, width: int) -> "Silhouette":
        return Silhouette(values=np.zeros((height, width)))
