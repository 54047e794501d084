from typing import Union

import numpy as np

from ffdshape.evaluator.evaluator_errors import RansacError
from ffdshape.evaluator.models.ransac_models import AffineParams, RansacConfig, RansacResult
from ffdshape.grids.metrics import iou
from ffdshape.grids.models.normalized_coord import pixel_to_normalized
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.sampler.sampler import affine_warp, resample


def contour_points(silhouette: Silhouette) -> np.ndarray:
    """(N, 2) normalized (x, y) of foreground pixels with a 4-connected background neighbour."""
    foreground = silhouette.binarize()
    padded = np.pad(foreground, 1, constant_values=False)
    interior = (
        foreground
        & padded[:-2, 1:-1]
        & padded[2:, 1:-1]
        & padded[1:-1, :-2]
        & padded[1:-1, 2:]
    )
    rows, cols = np.nonzero(foreground & ~interior)
    return np.stack(
        [
            pixel_to_normalized(cols, silhouette.width),
            pixel_to_normalized(rows, silhouette.height),
        ],
        axis=1,
    )


def _bbox_normalize(points: np.ndarray) -> np.ndarray:
    low = points.min(axis=0)
    extent = np.maximum(points.max(axis=0) - low, 1e-12)
    return (points - low) / extent


def nearest_candidates(source: np.ndarray, target: np.ndarray, count: int) -> np.ndarray:
    """
    For every source point, indices of its count nearest target points after both sets
    are normalized to their bounding boxes.
    """
    a, b = _bbox_normalize(source), _bbox_normalize(target)
    distances = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
    return np.argsort(distances, axis=1, kind="stable")[:, : min(count, len(target))]


def triangle_area(points: np.ndarray) -> float:
    (x0, y0), (x1, y1), (x2, y2) = points
    return 0.5 * abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))


def solve_affine(from_points: np.ndarray, to_points: np.ndarray) -> np.ndarray:
    """2 x 3 matrix mapping each of three from_points exactly onto its to_point."""
    system = np.concatenate([from_points, np.ones((3, 1))], axis=1)
    return np.linalg.solve(system, to_points).T  # type: ignore


def ransac_affine(
    source: Silhouette, target: Silhouette, config: Union[RansacConfig, None] = None
) -> RansacResult:
    """
    Affine baseline: K times, sample three source contour points, pair each with one of
    its nearest target contour points, solve the exact affine map and score the warped
    source by IOU against the target. Collinear triples are resampled.

    Parameters
    ----------
    source
        Shape to deform
    target
        Shape to reach
    config
        Number of hypotheses K, seed and sampling limits

    Returns
    -------
        The best-scoring RansacResult. Raises RansacError when K is 0, a contour has fewer
        than three points or every hypothesis is degenerate.
    """
    config = config or RansacConfig()
    if source.shape != target.shape:
        raise RansacError.invalid(
            "ransac_affine",
            "source and target dimensions differ",
            source=list(source.shape),
            target=list(target.shape),
        )
    if config.iterations == 0:
        raise RansacError.invalid("ransac_affine", "iterations must be positive")
    source_points, target_points = contour_points(source), contour_points(target)
    if len(source_points) < 3 or len(target_points) < 3:
        raise RansacError.invalid(
            "ransac_affine",
            "both contours need at least three points",
            source=len(source_points),
            target=len(target_points),
        )

    candidates = nearest_candidates(source_points, target_points, config.neighbours)
    rng = np.random.default_rng(config.seed)
    best_matrix, best_score = None, -1.0
    best_warped = None
    trials = degenerate = 0
    for _ in range(config.iterations):
        matrix = None
        for _ in range(config.max_attempts):
            picks = rng.choice(len(source_points), size=3, replace=False)
            partners = candidates[picks, rng.integers(candidates.shape[1], size=3)]
            from_points, to_points = target_points[partners], source_points[picks]
            if (
                triangle_area(from_points) > config.degenerate_tol
                and triangle_area(to_points) > config.degenerate_tol
            ):
                matrix = solve_affine(from_points, to_points)
                break
        if matrix is None or not np.all(np.isfinite(matrix)):
            degenerate += 1
            continue

        trials += 1
        warped = resample(source, affine_warp(matrix, source.height, source.width))
        score = iou(warped, target)
        if score > best_score:
            best_matrix, best_score, best_warped = matrix, score, warped

    if best_matrix is None or best_warped is None:
        raise RansacError.invalid(
            "ransac_affine", "every sampled triple was degenerate", iterations=config.iterations
        )
    return RansacResult(
        params=AffineParams.from_matrix(best_matrix),
        warped=best_warped,
        score=best_score,
        trials=trials,
        degenerate=degenerate,
    )
