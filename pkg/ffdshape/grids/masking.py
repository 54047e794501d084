from typing import Tuple

import numpy as np

from ffdshape.grids.grids_errors import GridsError
from ffdshape.grids.models.rect_mask import RectMask
from ffdshape.grids.models.silhouette import FOREGROUND_THRESHOLD, Silhouette


def apply_mask(target: Silhouette, mask: RectMask) -> Silhouette:
    if not mask.is_inside(target.height, target.width):
        raise GridsError.invalid(
            "apply_mask",
            "mask center outside image",
            center=(mask.center_row, mask.center_col),
            shape=target.shape,
        )
    top, bottom, left, right = mask.bounds(target.height, target.width)
    values = np.array(target.values)
    values[top:bottom, left:right] = 0.0
    return Silhouette(values=values)


def apply_mask_image(target: Silhouette, mask: Silhouette) -> Silhouette:
    """Keeps target pixels where the mask is 1 and removes them where it is 0."""
    if mask.shape != target.shape:
        raise GridsError.invalid(
            "apply_mask_image",
            "mask and target dimensions differ",
            target=target.shape,
            mask=mask.shape,
        )
    return Silhouette(values=target.values * mask.values)


def random_mask(
    target: Silhouette,
    size_range: Tuple[float, float],
    rng: np.random.Generator,
) -> RectMask:
    low, high = float(size_range[0]), float(size_range[1])
    if not (0.0 < low <= high <= 1.0):
        raise GridsError.invalid(
            "random_mask", "size_range must satisfy 0 < low <= high <= 1", size_range=[low, high]
        )
    rows, cols = np.nonzero(target.values > FOREGROUND_THRESHOLD)
    if rows.size == 0:
        raise GridsError.invalid("random_mask", "target has no foreground pixel")

    index = int(rng.integers(rows.size))
    mask_height = max(1, int(round(rng.uniform(low, high) * target.height)))
    mask_width = max(1, int(round(rng.uniform(low, high) * target.width)))
    return RectMask(
        center_row=int(rows[index]),
        center_col=int(cols[index]),
        mask_height=mask_height,
        mask_width=mask_width,
    )
