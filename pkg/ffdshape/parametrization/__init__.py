from ffdshape.parametrization.cumsum import cumsum_1d, cumsum_1d_adjoint
from ffdshape.parametrization.enums import RegularizationMode
from ffdshape.parametrization.models import ControlWarp, DifferentialWarp, WarpRecord
from ffdshape.parametrization.parametrization import (
    build_control_warp,
    build_control_warp_backward,
    enforce_monotonic,
    enforce_monotonic_backward,
    identity_control_warp,
    identity_differential,
    identity_steps,
    integrate,
    integrate_backward,
    regularization_tap,
    tap_backward,
)
from ffdshape.parametrization.parametrization_errors import ParametrizationError

__all__ = [
    "ControlWarp",
    "DifferentialWarp",
    "ParametrizationError",
    "RegularizationMode",
    "WarpRecord",
    "build_control_warp",
    "build_control_warp_backward",
    "cumsum_1d",
    "cumsum_1d_adjoint",
    "enforce_monotonic",
    "enforce_monotonic_backward",
    "identity_control_warp",
    "identity_differential",
    "identity_steps",
    "integrate",
    "integrate_backward",
    "regularization_tap",
    "tap_backward",
]
