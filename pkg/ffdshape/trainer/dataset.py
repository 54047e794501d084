import os
from typing import List, Tuple, Union

import numpy as np

from ffdshape.grids.grids_errors import GridsError
from ffdshape.grids.models.silhouette import FOREGROUND_THRESHOLD, Silhouette
from ffdshape.grids.silhouette_io import load_silhouette
from ffdshape.trainer.models.dataset import Dataset
from ffdshape.trainer.models.training_sample import LoadedDataset
from ffdshape.trainer.trainer_errors import DatasetError

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".bmp", ".gif", ".tif", ".tiff")
STANDARD_TEST_SIZE = 30
STANDARD_POOL_SIZE = 150
FALLBACK_TEST_FRACTION = 0.2
MANIFEST_FILENAME = "manifest.json"


def list_images(directory: str) -> List[str]:
    if not os.path.isdir(directory):
        raise DatasetError.unreadable("split_dataset", directory, "not a directory")
    return sorted(
        name
        for name in os.listdir(directory)
        if name.lower().endswith(IMAGE_EXTENSIONS)
        and os.path.isfile(os.path.join(directory, name))
    )


def held_out_size(
    count: int, test_size: Union[int, None] = None
) -> Tuple[int, List[str]]:
    """Number of held-out items for a pool of count images, with any warning to record."""
    if test_size is not None:
        if not 1 <= test_size < count:
            raise DatasetError.invalid(
                "split_dataset",
                "test_size must leave at least one train item",
                test_size=test_size,
                count=count,
            )
        return test_size, []
    if count >= STANDARD_POOL_SIZE:
        return STANDARD_TEST_SIZE, []
    size = max(1, int(round(FALLBACK_TEST_FRACTION * count)))
    return size, [
        f"pool of {count} images is below {STANDARD_POOL_SIZE}: "
        f"holding out {size} ({FALLBACK_TEST_FRACTION:.0%}) instead of {STANDARD_TEST_SIZE}"
    ]


def split_dataset(
    directory: str,
    seed: int,
    resolution: int,
    test_size: Union[int, None] = None,
    manifest_path: Union[str, None] = None,
) -> Dataset:
    """
    Shuffles the decodable images of a directory into disjoint train and test lists.

    Parameters
    ----------
    directory
        Folder of silhouette images
    seed
        Seed of the shuffle; the same directory and seed give the same manifest
    resolution
        Side length the images are trained at
    test_size
        Explicit number of held-out items
    manifest_path
        Where the manifest JSON is written, directory/manifest.json by default

    Returns
    -------
        The Dataset. Raises DatasetError with fewer than two decodable images.
    """
    root = os.path.abspath(directory)
    names, warnings = [], []
    for name in list_images(root):
        try:
            load_silhouette(os.path.join(root, name))
            names.append(name)
        except GridsError:
            warnings.append(f"skipped undecodable file {name}")
    if len(names) < 2:
        raise DatasetError.invalid(
            "split_dataset", "need at least two decodable images", directory=root, found=len(names)
        )

    size, size_warnings = held_out_size(len(names), test_size)
    order = np.random.default_rng(seed).permutation(len(names))
    test = sorted(names[i] for i in order[:size])
    train = sorted(names[i] for i in order[size:])
    dataset = Dataset(
        root=root,
        resolution=resolution,
        seed=seed,
        train_items=train,
        test_items=test,
        warnings=warnings + size_warnings,
    )
    dataset.save(manifest_path or os.path.join(root, MANIFEST_FILENAME))
    return dataset


def _load_all(paths: List[str], resolution: int) -> List[Silhouette]:
    return [
        load_silhouette(path, threshold=FOREGROUND_THRESHOLD, size=(resolution, resolution))
        for path in paths
    ]


def load_dataset(dataset: Dataset, resolution: Union[int, None] = None) -> LoadedDataset:
    """Decodes every item at the training resolution, binarized."""
    resolution = resolution or dataset.resolution
    try:
        return LoadedDataset(
            dataset=dataset,
            train=_load_all(dataset.train_paths(), resolution),
            test=_load_all(dataset.test_paths(), resolution),
        )
    except GridsError as error:
        raise DatasetError(operation="load_dataset", code=error.code, message=error.message)
