from typing import Tuple

import numpy as np

from ffdshape.parametrization.cumsum import suffix_sum
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.differential_warp import DifferentialWarp
from ffdshape.parametrization.parametrization_errors import ParametrizationError


def identity_steps(m: int, n: int) -> Tuple[float, float]:
    """(column step, row step) of the regular grid spanning [-1, 1]."""
    if m < 2 or n < 2:
        raise ParametrizationError.invalid(
            "identity_differential", "grid needs at least 2x2 nodes", m=m, n=n
        )
    return 2.0 / (n - 1), 2.0 / (m - 1)


def identity_differential(m: int, n: int) -> DifferentialWarp:
    """
    Constant increments whose integration is the regular grid. The offset sits one step
    before -1, so the first integrated node lands exactly on -1.
    """
    step_col, step_row = identity_steps(m, n)
    return DifferentialWarp(
        dx=np.full((m, n), step_col),
        dy=np.full((m, n), step_row),
        offset_x=-1.0 - step_col,
        offset_y=-1.0 - step_row,
    )


def identity_control_warp(m: int, n: int) -> ControlWarp:
    if m < 2 or n < 2:
        raise ParametrizationError.invalid(
            "identity_control_warp", "grid needs at least 2x2 nodes", m=m, n=n
        )
    columns = -1.0 + 2.0 * np.arange(n) / (n - 1)
    rows = -1.0 + 2.0 * np.arange(m) / (m - 1)
    return ControlWarp(
        x=np.broadcast_to(columns[None, :], (m, n)),
        y=np.broadcast_to(rows[:, None], (m, n)),
    )


def enforce_monotonic(raw: DifferentialWarp) -> DifferentialWarp:
    return DifferentialWarp(
        dx=np.abs(raw.dx),
        dy=np.abs(raw.dy),
        offset_x=raw.offset_x,
        offset_y=raw.offset_y,
    )


def enforce_monotonic_backward(
    raw: DifferentialWarp, grad: DifferentialWarp
) -> DifferentialWarp:
    # sign(0) == 0 is the chosen subgradient
    return DifferentialWarp(
        dx=grad.dx * np.sign(raw.dx),
        dy=grad.dy * np.sign(raw.dy),
        offset_x=grad.offset_x,
        offset_y=grad.offset_y,
    )


def integrate(delta: DifferentialWarp) -> ControlWarp:
    """x integrates dx left to right per row, y integrates dy top to bottom per column."""
    return ControlWarp(
        x=delta.offset_x + np.cumsum(delta.dx, axis=1),
        y=delta.offset_y + np.cumsum(delta.dy, axis=0),
    )


def integrate_backward(grad_x: np.ndarray, grad_y: np.ndarray) -> DifferentialWarp:
    return DifferentialWarp(
        dx=suffix_sum(grad_x, axis=1),
        dy=suffix_sum(grad_y, axis=0),
        offset_x=float(np.sum(grad_x)),
        offset_y=float(np.sum(grad_y)),
    )


def regularization_tap(
    raw: DifferentialWarp, mode: RegularizationMode
) -> DifferentialWarp:
    """The differential the integrator consumes: absolute in monotonic mode, raw otherwise."""
    if RegularizationMode(mode).is_monotonic:
        return enforce_monotonic(raw)
    return raw


def build_control_warp(
    raw: DifferentialWarp, mode: RegularizationMode
) -> ControlWarp:
    return integrate(regularization_tap(raw, mode))


def build_control_warp_backward(
    raw: DifferentialWarp,
    mode: RegularizationMode,
    grad_x: np.ndarray,
    grad_y: np.ndarray,
) -> DifferentialWarp:
    grad_tap = integrate_backward(grad_x, grad_y)
    return tap_backward(raw, mode, grad_tap)


def tap_backward(
    raw: DifferentialWarp, mode: RegularizationMode, grad_tap: DifferentialWarp
) -> DifferentialWarp:
    if RegularizationMode(mode).is_monotonic:
        return enforce_monotonic_backward(raw, grad_tap)
    return grad_tap
