import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class NormalizedCoord(BaseModel):
    """
    Image position in normalized space: corners at (-1,-1) and (+1,+1),
    x along columns, y along rows
    """

    model_config = ConfigDict(frozen=True)

    x: float = Field(description="Column axis coordinate")
    y: float = Field(description="Row axis coordinate")

    @staticmethod
    def from_pixel(row: float, col: float, height: int, width: int) -> "NormalizedCoord":
        return NormalizedCoord(
            x=float(pixel_to_normalized(col, width)),
            y=float(pixel_to_normalized(row, height)),
        )

    def to_pixel(self, height: int, width: int) -> tuple:
        return (
            float(normalized_to_pixel(self.y, height)),
            float(normalized_to_pixel(self.x, width)),
        )


def pixel_to_normalized(index: "np.ndarray | float", size: int) -> np.ndarray:
    return -1.0 + 2.0 * np.asarray(index, dtype=np.float64) / (size - 1)


def normalized_to_pixel(coord: "np.ndarray | float", size: int) -> np.ndarray:
    return (np.asarray(coord, dtype=np.float64) + 1.0) * (size - 1) / 2.0


def regular_axis(size: int) -> np.ndarray:
    return pixel_to_normalized(np.arange(size), size)


def regular_grid(height: int, width: int) -> tuple:
    """Per-pixel normalized (x, y) fields of the identity lookup."""
    x = np.broadcast_to(regular_axis(width)[None, :], (height, width)).copy()
    y = np.broadcast_to(regular_axis(height)[:, None], (height, width)).copy()
    return x, y
