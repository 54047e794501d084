from ffdshape.losses.loss_report import LossReport
from ffdshape.losses.losses import (
    LossGradients,
    combined_loss,
    shape_loss,
    tv_identity_loss,
)
from ffdshape.losses.losses_errors import LossesError

__all__ = [
    "LossGradients",
    "LossReport",
    "LossesError",
    "combined_loss",
    "shape_loss",
    "tv_identity_loss",
]
