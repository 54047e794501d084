from ffdshape.grids.models.normalized_coord import NormalizedCoord
from ffdshape.grids.models.rect_mask import RectMask
from ffdshape.grids.models.silhouette import Silhouette

__all__ = ["NormalizedCoord", "RectMask", "Silhouette"]
