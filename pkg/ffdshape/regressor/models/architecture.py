from typing import List

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

CONV_KERNELS = (5, 5, 2, 4)


class LayerShape(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    kernel: int
    padding: int
    in_channels: int
    out_channels: int
    pooled_size: int = Field(description="Spatial side after the 2x2 max-pool")
    output_size: int = Field(description="Spatial side after the convolution")


class Architecture(BaseModel):
    """
    Four [max-pool 2x2 -> conv (padding k // 2) -> ReLU] blocks, then fc1 (+ReLU) and fc2.

    64 x 64 input: pool 32, conv1 5x5 -> 32 | pool 16, conv2 5x5 -> 16 |
    pool 8, conv3 2x2 -> 9 | pool 4, conv4 4x4 -> 5 | flatten 500 -> fc1 20 -> fc2 2*m*n
    """

    model_config = ConfigDict(frozen=True)

    resolution: int = Field(default=64, ge=8)
    m: int = Field(default=8, ge=2)
    n: int = Field(default=8, ge=2)
    channels: int = Field(default=20, ge=1)
    hidden: int = Field(default=20, ge=1)
    input_channels: int = Field(default=2, ge=1)
    learn_rotation: bool = Field(
        default=False, description="Add one fc2 output for a global rotation angle"
    )

    @model_validator(mode="after")
    def validate_shapes(self) -> "Architecture":
        for layer in self.layers:
            if layer.pooled_size < 1 or layer.output_size < 1:
                raise ValueError(
                    f"resolution {self.resolution} collapses at {layer.name}: "
                    f"pooled {layer.pooled_size}, output {layer.output_size}"
                )
        return self

    @property
    def layers(self) -> List[LayerShape]:
        layers = []
        size, in_channels = self.resolution, self.input_channels
        for index, kernel in enumerate(CONV_KERNELS):
            pooled = size // 2
            padding = kernel // 2
            size = pooled + 2 * padding - kernel + 1
            layers.append(
                LayerShape(
                    name=f"conv{index + 1}",
                    kernel=kernel,
                    padding=padding,
                    in_channels=in_channels,
                    out_channels=self.channels,
                    pooled_size=pooled,
                    output_size=size,
                )
            )
            in_channels = self.channels
        return layers

    @computed_field  # type: ignore[misc]
    @property
    def flat_features(self) -> int:
        last = self.layers[-1]
        return last.out_channels * last.output_size * last.output_size

    @computed_field  # type: ignore[misc]
    @property
    def outputs(self) -> int:
        return 2 * self.m * self.n + (1 if self.learn_rotation else 0)

    def parameter_shapes(self) -> dict:
        shapes = {}
        for layer in self.layers:
            shapes[f"{layer.name}_weight"] = (
                layer.out_channels,
                layer.in_channels,
                layer.kernel,
                layer.kernel,
            )
            shapes[f"{layer.name}_bias"] = (layer.out_channels,)
        shapes["fc1_weight"] = (self.hidden, self.flat_features)
        shapes["fc1_bias"] = (self.hidden,)
        shapes["fc2_weight"] = (self.outputs, self.hidden)
        shapes["fc2_bias"] = (self.outputs,)
        shapes["w0_x"] = ()
        shapes["w0_y"] = ()
        return shapes

    def parameter_count(self) -> int:
        total = 0
        for shape in self.parameter_shapes().values():
            count = 1
            for dim in shape:
                count *= dim
            total += count
        return total
