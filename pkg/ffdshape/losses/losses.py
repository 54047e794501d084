from typing import NamedTuple, Tuple

import numpy as np

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.losses.loss_report import LossReport
from ffdshape.losses.losses_errors import LossesError
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.parametrization.models.differential_warp import DifferentialWarp
from ffdshape.parametrization.parametrization import identity_steps


class LossGradients(NamedTuple):
    estimated: np.ndarray
    delta: DifferentialWarp


def shape_loss(estimated: Silhouette, target: Silhouette) -> Tuple[float, np.ndarray]:
    """sum(0.5 * (target - estimated)^2) and its gradient (estimated - target)."""
    if estimated.shape != target.shape:
        raise LossesError.invalid(
            "shape_loss",
            "dimension mismatch",
            estimated=list(estimated.shape),
            target=list(target.shape),
        )
    residual = estimated.values - target.values
    return float(0.5 * np.sum(residual * residual)), residual


def tv_identity_loss(delta: DifferentialWarp) -> Tuple[float, DifferentialWarp]:
    """
    Anisotropic TV of the warp against the identity: l1 distance of the increments
    to the uniform identity increments. Offsets are not penalized.
    """
    step_col, step_row = identity_steps(delta.m, delta.n)
    deviation_x = delta.dx - step_col
    deviation_y = delta.dy - step_row
    loss = float(np.sum(np.abs(deviation_x)) + np.sum(np.abs(deviation_y)))
    grad = DifferentialWarp(dx=np.sign(deviation_x), dy=np.sign(deviation_y))
    return loss, grad


def zero_like(delta: DifferentialWarp) -> DifferentialWarp:
    return DifferentialWarp(dx=np.zeros_like(delta.dx), dy=np.zeros_like(delta.dy))


def combined_loss(
    estimated: Silhouette,
    target: Silhouette,
    delta: DifferentialWarp,
    weight: float,
    mode: RegularizationMode,
    normalize: bool = False,
) -> Tuple[LossReport, LossGradients]:
    """
    shape_loss + weight * tv_identity_loss. The delta passed in is the regularizer's tap
    point; mode NONE drops the regularizer from both value and gradient.
    """
    if weight < 0:
        raise LossesError.invalid("combined_loss", "lambda must be >= 0", weight=weight)
    shape_value, grad_estimated = shape_loss(estimated, target)
    if normalize:
        pixels = estimated.height * estimated.width
        shape_value, grad_estimated = shape_value / pixels, grad_estimated / pixels

    if not RegularizationMode(mode).is_regularized:
        report = LossReport.compose(shape_value, 0.0, weight)
        return report, LossGradients(grad_estimated, zero_like(delta))

    reg_value, grad_reg = tv_identity_loss(delta)
    if normalize:
        entries = 2 * delta.m * delta.n
        reg_value, grad_reg = reg_value / entries, grad_reg.scaled(1.0 / entries)
    report = LossReport.compose(shape_value, reg_value, weight)
    return report, LossGradients(grad_estimated, grad_reg.scaled(weight))
