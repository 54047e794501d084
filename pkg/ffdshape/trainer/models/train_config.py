from typing import Tuple, Union

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ffdshape.parametrization.enums.regularization_mode import RegularizationMode


class TrainConfig(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="FFDSHAPE_TRAIN_", extra="ignore")

    epochs: int = Field(default=20, ge=1)
    batch_size: int = Field(default=8, ge=1)
    learning_rate: float = Field(default=1e-3, gt=0)
    reg_weight: float = Field(default=1e-5, ge=0, description="Regularizer weight lambda")
    mode: RegularizationMode = Field(default=RegularizationMode.TV_MONOTONIC)
    mask_range: Tuple[float, float] = Field(
        default=(0.2, 0.6),
        description="Mask side as a fraction of the image side; (0, 0) disables masking",
    )
    scale_range: Tuple[float, float] = Field(
        default=(0.9, 1.1), description="Per-axis target scale augmentation"
    )
    rotation_range: Tuple[float, float] = Field(
        default=(0.0, 0.0), description="Target rotation augmentation in degrees"
    )
    learn_rotation: bool = Field(
        default=False, description="Regress a global rotation composed after the grid warp"
    )
    augment_source: bool = Field(
        default=False, description="Apply the scale/rotation augmentation to sources too"
    )
    seed: int = Field(default=0)
    checkpoint_every: int = Field(
        default=100, ge=0, description="Steps between checkpoints, 0 keeps only the final one"
    )
    resolution: int = Field(default=64, ge=8)
    grid_m: int = Field(default=8, ge=2)
    grid_n: int = Field(default=8, ge=2)
    normalize_losses: bool = Field(default=False)
    threads: int = Field(default=1, ge=1, description="Workers for per-sample passes")
    heldout_pairs: int = Field(
        default=60, ge=1, description="Ordered test pairs scored at every epoch end"
    )
    test_size: Union[int, None] = Field(
        default=None, ge=1, description="Overrides the automatic test split size"
    )

    @model_validator(mode="after")
    def validate_ranges(self) -> "TrainConfig":
        low, high = self.mask_range
        if not ((low, high) == (0.0, 0.0) or 0.0 < low <= high <= 1.0):
            raise ValueError(
                f"mask_range must be (0, 0) or 0 < lo <= hi <= 1, got {self.mask_range}"
            )
        low, high = self.scale_range
        if not 0.0 < low <= high:
            raise ValueError(f"scale_range must satisfy 0 < lo <= hi, got {self.scale_range}")
        low, high = self.rotation_range
        if low > high:
            raise ValueError(f"rotation_range must satisfy lo <= hi, got {self.rotation_range}")
        return self

    @property
    def masking_enabled(self) -> bool:
        return self.mask_range != (0.0, 0.0)
