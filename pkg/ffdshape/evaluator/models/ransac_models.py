import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ffdshape.grids.models.silhouette import Silhouette


class RansacConfig(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="FFDSHAPE_RANSAC_", extra="ignore")

    iterations: int = Field(default=2000, ge=0, description="Number of sampled hypotheses K")
    seed: int = Field(default=0)
    neighbours: int = Field(
        default=3, ge=1, description="Target partners considered per sampled source point"
    )
    max_attempts: int = Field(
        default=20, ge=1, description="Resamples per hypothesis before it counts as degenerate"
    )
    degenerate_tol: float = Field(
        default=1e-6, gt=0, description="Triangle area below which a triple is collinear"
    )


class AffineParams(BaseModel):
    """
    Lookup map (x', y') = (a x + b y + c, d x + e y + f) in normalized coordinates,
    taking target positions to source positions
    """

    model_config = ConfigDict(frozen=True)

    a: float = 1.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    e: float = 1.0
    f: float = 0.0

    @model_validator(mode="after")
    def validate_finite(self) -> "AffineParams":
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("affine parameters must be finite")
        return self

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b, self.c], [self.d, self.e, self.f]])

    @staticmethod
    def from_matrix(matrix: np.ndarray) -> "AffineParams":
        (a, b, c), (d, e, f) = np.asarray(matrix, dtype=np.float64).reshape(2, 3).tolist()
        return AffineParams(a=a, b=b, c=c, d=d, e=e, f=f)


class RansacResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    params: AffineParams
    warped: Silhouette
    score: float = Field(ge=0, le=1, description="IOU of the warped source against the target")
    trials: int = Field(ge=1, description="Non-degenerate hypotheses scored")
    degenerate: int = Field(ge=0, description="Hypotheses rejected as collinear")
