from pydantic import BaseModel, ConfigDict, Field

from ffdshape.arrays import FloatArray


class WarpGradients(BaseModel):
    """
    Loss gradient with respect to a control warp. The offsets receive the sum of the node
    gradients of their axis, since an offset shifts every node of that axis.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d_control_x: FloatArray = Field(description="m x n gradient of the x nodes")
    d_control_y: FloatArray = Field(description="m x n gradient of the y nodes")
    d_offset_x: float = Field(default=0.0)
    d_offset_y: float = Field(default=0.0)
