from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="FFDSHAPE_", extra="ignore")

    resolution: int = Field(
        default=64, ge=8, description="Working image side length in pixels"
    )
    grid_m: int = Field(default=8, ge=2, description="Control grid rows")
    grid_n: int = Field(default=8, ge=2, description="Control grid columns")
    seed: int = Field(default=0, description="Seed for every random draw of a run")
    threads: int = Field(
        default=1, ge=1, description="Worker cap for per-sample parallel passes"
    )
    verbose: bool = Field(default=False)
