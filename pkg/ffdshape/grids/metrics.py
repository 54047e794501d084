import numpy as np

from ffdshape.grids.grids_errors import GridsError
from ffdshape.grids.models.silhouette import FOREGROUND_THRESHOLD, Silhouette


def iou(a: Silhouette, b: Silhouette, threshold: float = FOREGROUND_THRESHOLD) -> float:
    if a.shape != b.shape:
        raise GridsError.invalid(
            "iou", "silhouette dimensions differ", a=a.shape, b=b.shape
        )
    mask_a = a.binarize(threshold)
    mask_b = b.binarize(threshold)
    union = int(np.count_nonzero(mask_a | mask_b))
    if union == 0:
        return 1.0
    return int(np.count_nonzero(mask_a & mask_b)) / union


def foreground_centroid(silhouette: Silhouette) -> tuple:
    rows, cols = np.nonzero(silhouette.binarize())
    if rows.size == 0:
        return (silhouette.height - 1) / 2.0, (silhouette.width - 1) / 2.0
    return float(rows.mean()), float(cols.mean())


def foreground_bbox(silhouette: Silhouette) -> tuple:
    """(top, bottom, left, right) inclusive bounds of the foreground, or the whole image."""
    rows, cols = np.nonzero(silhouette.binarize())
    if rows.size == 0:
        return 0, silhouette.height - 1, 0, silhouette.width - 1
    return int(rows.min()), int(rows.max()), int(cols.min()), int(cols.max())
