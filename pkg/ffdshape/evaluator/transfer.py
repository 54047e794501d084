import os

import numpy as np
from PIL import Image, UnidentifiedImageError

from ffdshape.evaluator.evaluator_errors import EvaluationError
from ffdshape.sampler.models.dense_warp import DenseWarp
from ffdshape.sampler.sampler import sample_image


def load_image(path: str, labels: bool = False) -> np.ndarray:
    """RGB texture as uint8 (H, W, 3), or an integer label map as int64 (H, W)."""
    if not os.path.isfile(path):
        raise EvaluationError.unreadable("load_image", path, "file does not exist")
    try:
        with Image.open(path) as image:
            image.load()
            if labels:
                return np.asarray(image.convert("I"), dtype=np.int64)
            return np.asarray(image.convert("RGB"), dtype=np.uint8)
    except (UnidentifiedImageError, OSError) as exc:
        raise EvaluationError.unreadable("load_image", path, str(exc))


def save_image(image: np.ndarray, path: str) -> None:
    wide = np.issubdtype(image.dtype, np.integer) and image.max(initial=0) > 255
    if image.ndim == 2 and wide:
        Image.fromarray(image.astype(np.int32)).save(path, format="PNG")
        return
    Image.fromarray(image.astype(np.uint8)).save(path, format="PNG")


def transfer(image: np.ndarray, warp: DenseWarp, labels: bool = False) -> np.ndarray:
    """
    Carries an image defined on the source frame onto the target frame.
    Textures are sampled bilinearly per channel; label maps use nearest lookup so
    ids are never blended. Pixels mapped outside the source become 0.
    """
    if image.shape[:2] != warp.shape:
        raise EvaluationError.invalid(
            "transfer",
            "image and warp dimensions differ",
            image=list(image.shape[:2]),
            warp=list(warp.shape),
        )
    sampled = sample_image(image, warp, nearest=labels)
    if labels:
        return np.rint(sampled).astype(image.dtype)  # type: ignore
    if np.issubdtype(image.dtype, np.integer):
        info = np.iinfo(image.dtype)
        return np.clip(np.rint(sampled), info.min, info.max).astype(image.dtype)  # type: ignore
    return sampled
