import os

import numpy as np
import pytest

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.regressor.checkpoint_io import load_checkpoint, save_checkpoint
from ffdshape.regressor.regressor import init_params
from ffdshape.trainer.synth import generate_shapes, write_synthetic_dataset


def paint_square(size: int, top: int, left: int, side: int) -> Silhouette:
    values = np.zeros((size, size))
    values[top : top + side, left : left + side] = 1.0
    return Silhouette(values=values)


def gaussian_blob(size: int, row: float, col: float, sigma: float) -> Silhouette:
    rows, cols = np.mgrid[0:size, 0:size].astype(np.float64)
    values = np.exp(-((rows - row) ** 2 + (cols - col) ** 2) / (2.0 * sigma**2))
    return Silhouette(values=values)


@pytest.fixture
def given_centered_square():
    return paint_square(64, 22, 22, 20)


@pytest.fixture
def given_translated_square():
    return paint_square(64, 22, 30, 20)


@pytest.fixture
def given_smooth_pair():
    return gaussian_blob(64, 30.3, 29.6, 9.0), gaussian_blob(64, 33.1, 35.4, 8.0)


@pytest.fixture
def given_small_shapes():
    return generate_shapes("mixed", 30, 16, np.random.default_rng(3))


@pytest.fixture
def given_fresh_checkpoint_path(tmp_path):
    params = init_params(np.random.default_rng(5), 2, 2, 16)
    path = str(tmp_path / "fresh.ckpt")
    save_checkpoint(path, params, 0, RegularizationMode.TV_MONOTONIC)
    return path


@pytest.fixture
def given_fresh_checkpoint(given_fresh_checkpoint_path):
    return load_checkpoint(given_fresh_checkpoint_path)


@pytest.fixture
def given_synthetic_directory(tmp_path):
    directory = os.path.join(str(tmp_path), "ellipses")
    write_synthetic_dataset(directory, "ellipse", 12, 16, seed=11)
    return directory


@pytest.fixture
def given_square_pair(given_centered_square, given_translated_square):
    return given_centered_square, given_translated_square


@pytest.fixture
def given_scaled_square_pair():
    return paint_square(64, 24, 24, 16), paint_square(64, 20, 20, 24)
