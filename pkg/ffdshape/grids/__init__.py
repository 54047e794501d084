from ffdshape.grids.grids_errors import GridsError
from ffdshape.grids.masking import apply_mask, apply_mask_image, random_mask
from ffdshape.grids.metrics import foreground_bbox, foreground_centroid, iou
from ffdshape.grids.models import NormalizedCoord, RectMask, Silhouette
from ffdshape.grids.models.normalized_coord import (
    normalized_to_pixel,
    pixel_to_normalized,
    regular_grid,
)
from ffdshape.grids.silhouette_io import load_silhouette, save_silhouette, save_strip

__all__ = [
    "GridsError",
    "NormalizedCoord",
    "RectMask",
    "Silhouette",
    "apply_mask",
    "apply_mask_image",
    "foreground_bbox",
    "foreground_centroid",
    "iou",
    "load_silhouette",
    "normalized_to_pixel",
    "pixel_to_normalized",
    "random_mask",
    "regular_grid",
    "save_silhouette",
    "save_strip",
]
