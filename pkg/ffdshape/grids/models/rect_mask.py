from pydantic import BaseModel, ConfigDict, Field


class RectMask(BaseModel):
    """
    Axis-aligned occlusion rectangle, centered on a pixel of the target
    """

    model_config = ConfigDict(frozen=True)

    center_row: int = Field(ge=0, description="Row index of the rectangle center")
    center_col: int = Field(ge=0, description="Column index of the rectangle center")
    mask_height: int = Field(ge=1, description="Rectangle height in pixels")
    mask_width: int = Field(ge=1, description="Rectangle width in pixels")

    def bounds(self, height: int, width: int) -> tuple:
        """Row/column slice bounds of the rectangle clipped to a height x width image."""
        top = self.center_row - self.mask_height // 2
        left = self.center_col - self.mask_width // 2
        return (
            max(top, 0),
            min(top + self.mask_height, height),
            max(left, 0),
            min(left + self.mask_width, width),
        )

    def is_inside(self, height: int, width: int) -> bool:
        return self.center_row < height and self.center_col < width
