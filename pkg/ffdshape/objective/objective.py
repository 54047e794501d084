from typing import NamedTuple, Union

import numpy as np

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.losses.loss_report import LossReport
from ffdshape.losses.losses import combined_loss, tv_identity_loss
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.differential_warp import DifferentialWarp
from ffdshape.parametrization.parametrization import (
    integrate,
    integrate_backward,
    regularization_tap,
    tap_backward,
)
from ffdshape.sampler.models.dense_warp import DenseWarp
from ffdshape.sampler.sampler import (
    compose,
    compose_backward,
    resample,
    resample_backward,
    rotation_warp,
    rotation_warp_derivative,
    upsample,
    upsample_backward,
)


class WarpForward(NamedTuple):
    tap: DifferentialWarp
    control: ControlWarp
    dense: DenseWarp
    rotation: Union[DenseWarp, None]
    lookup: DenseWarp
    estimated: Silhouette


class ObjectiveEvaluation(NamedTuple):
    report: LossReport
    grad_raw: DifferentialWarp
    grad_theta: float
    forward: WarpForward


def warp_forward(
    source: Silhouette,
    raw: DifferentialWarp,
    mode: RegularizationMode,
    theta: Union[float, None] = None,
) -> WarpForward:
    """
    raw differential -> (abs in monotonic mode) -> integrate -> upsample
    -> (compose with a global rotation) -> resample the source.
    """
    tap = regularization_tap(raw, mode)
    control = integrate(tap)
    dense = upsample(control, source.height, source.width)
    rotation = None
    lookup = dense
    if theta is not None:
        rotation = rotation_warp(theta, source.height, source.width)
        lookup = compose(dense, rotation)
    return WarpForward(tap, control, dense, rotation, lookup, resample(source, lookup))


def evaluate_objective(
    source: Silhouette,
    target: Silhouette,
    raw: DifferentialWarp,
    weight: float,
    mode: RegularizationMode,
    theta: Union[float, None] = None,
    normalize: bool = False,
) -> ObjectiveEvaluation:
    """
    Loss of warping the source onto the complete target, with the analytic gradient
    with respect to the raw differential (and the rotation angle when one is given).
    """
    forward = warp_forward(source, raw, mode, theta)
    report, grads = combined_loss(
        forward.estimated, target, forward.tap, weight, mode, normalize=normalize
    )

    grad_lookup, _ = resample_backward(source, forward.lookup, grads.estimated)
    grad_theta = 0.0
    grad_dense = grad_lookup
    if forward.rotation is not None:
        grad_dense, grad_rotation = compose_backward(
            forward.dense, forward.rotation, grad_lookup
        )
        derivative = rotation_warp_derivative(theta, source.height, source.width)  # type: ignore
        grad_theta = float(
            np.sum(grad_rotation.x * derivative.x) + np.sum(grad_rotation.y * derivative.y)
        )

    grad_control = upsample_backward(forward.control, grad_dense)
    grad_tap = integrate_backward(grad_control.d_control_x, grad_control.d_control_y)
    grad_tap = grad_tap + grads.delta
    grad_raw = tap_backward(raw, mode, grad_tap)
    return ObjectiveEvaluation(report, grad_raw, grad_theta, forward)


def warp_smoothness(raw: DifferentialWarp, mode: RegularizationMode) -> float:
    """TV-identity value of the differential the integrator actually consumes."""
    return tv_identity_loss(regularization_tap(raw, mode))[0]
