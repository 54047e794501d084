import math
from typing import List, Tuple, Union

import numpy as np

from ffdshape.grids.masking import apply_mask, random_mask
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.sampler.sampler import affine_warp, resample
from ffdshape.trainer.models.train_config import TrainConfig
from ffdshape.trainer.models.training_sample import LoadedDataset, TrainingSample
from ffdshape.trainer.trainer_errors import DatasetError

HELDOUT_STREAM = 7919


def augment(silhouette: Silhouette, config: TrainConfig, rng: np.random.Generator) -> Silhouette:
    """
    Independent per-axis scaling and a rotation (degrees) about the image center.
    Always draws three numbers so the stream stays aligned whatever the ranges are.
    """
    scale_x = rng.uniform(*config.scale_range)
    scale_y = rng.uniform(*config.scale_range)
    theta = math.radians(rng.uniform(*config.rotation_range))
    if scale_x == 1.0 and scale_y == 1.0 and theta == 0.0:
        return silhouette
    cos, sin = math.cos(theta), math.sin(theta)
    matrix = np.array(
        [[cos / scale_x, sin / scale_x, 0.0], [-sin / scale_y, cos / scale_y, 0.0]]
    )
    return resample(silhouette, affine_warp(matrix, silhouette.height, silhouette.width))


def _make_sample(
    source: Silhouette,
    full_target: Silhouette,
    source_index: int,
    target_index: int,
    config: TrainConfig,
    rng: np.random.Generator,
) -> TrainingSample:
    mask = None
    partial_target = full_target
    if config.masking_enabled and full_target.foreground_count() > 0:
        mask = random_mask(full_target, config.mask_range, rng)
        partial_target = apply_mask(full_target, mask)
    return TrainingSample(
        source=source,
        full_target=full_target,
        partial_target=partial_target,
        source_index=source_index,
        target_index=target_index,
        mask=mask,
    )


def _draw_pair(count: int, rng: np.random.Generator) -> Tuple[int, int]:
    target = int(rng.integers(count))
    source = int(rng.integers(count - 1))
    if source >= target:
        source += 1
    return source, target


def sample_batch(
    loaded: LoadedDataset, config: TrainConfig, rng: np.random.Generator
) -> List[TrainingSample]:
    """
    Draws batch_size (source, target) pairs uniformly with replacement, source != target.
    Targets are augmented then masked; the unmasked augmented target is kept for the loss.
    """
    count = len(loaded.train)
    if count < 2:
        raise DatasetError.invalid(
            "sample_batch", "training needs at least two train items", found=count
        )
    samples = []
    for _ in range(config.batch_size):
        source_index, target_index = _draw_pair(count, rng)
        full_target = augment(loaded.train[target_index], config, rng)
        source = loaded.train[source_index]
        if config.augment_source:
            source = augment(source, config, rng)
        samples.append(
            _make_sample(source, full_target, source_index, target_index, config, rng)
        )
    return samples


def heldout_samples(
    loaded: LoadedDataset, config: TrainConfig, limit: Union[int, None] = None
) -> List[TrainingSample]:
    """
    Ordered test pairs (no augmentation, masked like training), subsampled to at most
    limit pairs with a stream fixed by the seed so every epoch scores the same pairs.
    """
    count = len(loaded.test)
    pairs = [(s, t) for s in range(count) for t in range(count) if s != t]
    rng = np.random.default_rng([config.seed, HELDOUT_STREAM])
    limit = config.heldout_pairs if limit is None else limit
    if len(pairs) > limit:
        chosen = np.sort(rng.choice(len(pairs), size=limit, replace=False))
        pairs = [pairs[int(i)] for i in chosen]
    return [
        _make_sample(loaded.test[s], loaded.test[t], s, t, config, rng) for s, t in pairs
    ]
