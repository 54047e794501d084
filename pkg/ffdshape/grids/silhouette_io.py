import os
from typing import Optional, Tuple

import numpy as np
from PIL import Image, UnidentifiedImageError

from ffdshape.grids.grids_errors import GridsError
from ffdshape.grids.models.silhouette import Silhouette


def load_silhouette(
    path: str, threshold: float = 0.0, size: Optional[Tuple[int, int]] = None
) -> Silhouette:
    """
    Reads a grayscale or RGB raster as a Silhouette.

    Parameters
    ----------
    path
        Image file path
    threshold
        When positive, every value is snapped to {0, 1} by comparison against it
    size
        Optional (height, width) to resize to before thresholding

    Returns
    -------
        The decoded Silhouette. Raises GridsError when the file cannot be decoded or is empty.
    """
    if not os.path.isfile(path):
        raise GridsError.unreadable("load_silhouette", path, "file does not exist")
    try:
        with Image.open(path) as image:
            image.load()
            gray = image.convert("L")
    except (UnidentifiedImageError, OSError) as exc:
        raise GridsError.unreadable("load_silhouette", path, str(exc))

    if gray.width == 0 or gray.height == 0:
        raise GridsError.invalid("load_silhouette", "zero-size image", path=path)
    if size is not None and (gray.height, gray.width) != tuple(size):
        gray = gray.resize((size[1], size[0]), resample=Image.Resampling.BILINEAR)

    values = np.asarray(gray, dtype=np.float64) / 255.0
    if threshold > 0:
        values = (values > threshold).astype(np.float64)
    try:
        return Silhouette(values=values)
    except ValueError as exc:
        raise GridsError.invalid("load_silhouette", str(exc), path=path)


def to_uint8(values: np.ndarray) -> np.ndarray:
    return np.clip(np.round(values * 255.0), 0, 255).astype(np.uint8)  # type: ignore


def save_silhouette(silhouette: Silhouette, path: str) -> None:
    Image.fromarray(to_uint8(silhouette.values)).save(path, format="PNG")


def save_strip(silhouettes: list, path: str, gap: int = 2) -> None:
    """Writes silhouettes side by side (with a white separator) as one PNG."""
    height = max(s.height for s in silhouettes)
    columns = []
    for index, silhouette in enumerate(silhouettes):
        panel = np.zeros((height, silhouette.width))
        panel[: silhouette.height] = silhouette.values
        columns.append(panel)
        if index < len(silhouettes) - 1:
            columns.append(np.ones((height, gap)))
    Image.fromarray(to_uint8(np.concatenate(columns, axis=1))).save(
        path, format="PNG"
    )
