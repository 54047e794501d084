import math
from typing import Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class LossReport(BaseModel):
    """
    Value of the alignment objective: shape term plus weighted regularizer
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    step: Union[int, None] = Field(default=None, description="Iteration or training step")
    shape_loss: float = Field(ge=0, description="Squared-difference shape term")
    reg_loss: float = Field(ge=0, description="TV-identity regularizer")
    total: float = Field(ge=0)
    weight: float = Field(ge=0, alias="lambda", description="Regularizer weight")

    @model_validator(mode="after")
    def validate_total(self) -> "LossReport":
        expected = self.shape_loss + self.weight * self.reg_loss
        if not math.isclose(self.total, expected, rel_tol=1e-12, abs_tol=1e-300):
            raise ValueError(f"total {self.total} != shape + lambda * reg = {expected}")
        return self

    @staticmethod
    def compose(
        shape_loss: float, reg_loss: float, weight: float, step: Union[int, None] = None
    ) -> "LossReport":
        return LossReport(
            step=step,
            shape_loss=shape_loss,
            reg_loss=reg_loss,
            total=shape_loss + weight * reg_loss,
            weight=weight,
        )

    def at_step(self, step: int) -> "LossReport":
        return self.model_copy(update={"step": step})

    def is_finite(self) -> bool:
        return all(
            math.isfinite(v) for v in (self.shape_loss, self.reg_loss, self.total)
        )
