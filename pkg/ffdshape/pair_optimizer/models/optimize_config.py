from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from ffdshape.parametrization.enums.regularization_mode import RegularizationMode


class OptimizeConfig(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="FFDSHAPE_ALIGN_", extra="ignore")

    max_iters: int = Field(default=1000, ge=1, description="ADAM iteration budget")
    learning_rate: float = Field(
        default=0.05,
        gt=0,
        description="Step size for raw coordinate optimization (network training uses 1e-3)",
    )
    reg_weight: float = Field(default=1e-5, ge=0, description="Regularizer weight lambda")
    mode: RegularizationMode = Field(default=RegularizationMode.TV_MONOTONIC)
    adam_beta1: float = Field(default=0.9, ge=0, lt=1)
    adam_beta2: float = Field(default=0.999, ge=0, lt=1)
    adam_eps: float = Field(default=1e-8, gt=0)
    convergence_tol: float = Field(
        default=1e-6, ge=0, description="Relative loss change over the window that stops the run"
    )
    convergence_window: int = Field(default=10, ge=1)
    absolute_tol: float = Field(
        default=1e-10, ge=0, description="Total loss at or below which the pair is aligned"
    )
    divergence_factor: float = Field(
        default=10.0, gt=1, description="Abort when the loss exceeds this multiple of its start"
    )
    grid_m: int = Field(default=8, ge=2)
    grid_n: int = Field(default=8, ge=2)
    normalize_losses: bool = Field(default=False)
    theta_learning_rate: float = Field(
        default=0.01, gt=0, description="Step size of the global rotation (radians)"
    )
    rotation_warmup: int = Field(
        default=200,
        ge=0,
        description="Initial iterations that move only the rotation, the grid held at identity",
    )
    seed: int = Field(
        default=0,
        description="Echoed with the run; direct optimization draws no random numbers",
    )
