from typing import Tuple

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.objective.objective import WarpForward, warp_forward
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.regressor.models.regressor_params import RegressorParams
from ffdshape.regressor.regressor import RegressorOutput, forward


def predict(
    params: RegressorParams,
    mode: RegularizationMode,
    source: Silhouette,
    partial_target: Silhouette,
) -> Tuple[RegressorOutput, WarpForward]:
    """Regressed raw warp and the source deformed by it; parameters are only read."""
    output, _ = forward(params, source, partial_target)
    return output, warp_forward(source, output.raw, mode, output.theta)
