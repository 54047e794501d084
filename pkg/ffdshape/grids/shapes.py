from typing import Optional, Tuple, Union

import numpy as np
from meiga import Failure, Result, Success, isSuccess

from ffdshape.config import Config
from ffdshape.grids.grids_errors import GridsError
from ffdshape.grids.masking import apply_mask, apply_mask_image, random_mask
from ffdshape.grids.metrics import iou
from ffdshape.grids.models.rect_mask import RectMask
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.grids.silhouette_io import load_silhouette, save_silhouette
from ffdshape.tools import print_intro

DEFAULT_MASK_RANGE = (0.2, 0.6)


class Shapes:
    @staticmethod
    def from_config(config: Config) -> "Shapes":
        return Shapes(
            resolution=config.resolution, seed=config.seed, verbose=config.verbose
        )

    def __init__(
        self, resolution: Union[int, None] = None, seed: int = 0, verbose: bool = False
    ):
        self.resolution = resolution
        self.rng = np.random.default_rng(seed)
        self.verbose = verbose

    def load(
        self, path: str, threshold: float = 0.5, verbose: Optional[bool] = False
    ) -> Result[Silhouette, GridsError]:
        """
        Loads a silhouette image, resized to the configured resolution when one is set.

        Parameters
        ----------
        path
            PNG (or any raster Pillow decodes) path
        threshold
            Binarization threshold, 0 keeps the gray levels
        verbose
            Used for print the operation trace

        Returns
        -------
            A Result where if the operation is successful it returns a Silhouette.
            Otherwise, it returns a GridsError.
        """
        print_intro("load_silhouette", verbose=self.verbose or verbose)
        size = (self.resolution, self.resolution) if self.resolution else None
        try:
            return Success(load_silhouette(path, threshold=threshold, size=size))
        except GridsError as error:
            return Failure(error)

    def save(self, silhouette: Silhouette, path: str) -> Result[bool, GridsError]:
        try:
            save_silhouette(silhouette, path)
        except OSError as exc:
            return Failure(GridsError.unreadable("save_silhouette", path, str(exc)))
        return isSuccess

    def occlude(
        self,
        target: Silhouette,
        size_range: Tuple[float, float] = DEFAULT_MASK_RANGE,
        mask: Union[RectMask, Silhouette, None] = None,
    ) -> Result[Tuple[Silhouette, Union[RectMask, None]], GridsError]:
        """
        Removes part of a target: a given rectangle or mask image, or a random rectangle
        centered on a foreground pixel.
        """
        try:
            if isinstance(mask, Silhouette):
                return Success((apply_mask_image(target, mask), None))
            rect = mask if mask is not None else random_mask(target, size_range, self.rng)
            return Success((apply_mask(target, rect), rect))
        except GridsError as error:
            return Failure(error)

    def iou(self, a: Silhouette, b: Silhouette) -> Result[float, GridsError]:
        try:
            return Success(iou(a, b))
        except GridsError as error:
            return Failure(error)
