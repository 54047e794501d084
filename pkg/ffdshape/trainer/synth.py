import os
from typing import Callable, Dict, List, Tuple

import numpy as np

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.grids.silhouette_io import save_silhouette
from ffdshape.trainer.trainer_errors import DatasetError


def _frame(
    resolution: int, rng: np.random.Generator, angle_range: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Pixel-center coordinates relative to a jittered center, rotated by a random angle."""
    rows, cols = np.mgrid[0:resolution, 0:resolution].astype(np.float64)
    center = (resolution - 1) / 2.0 + rng.uniform(-0.08, 0.08, size=2) * resolution
    angle = rng.uniform(-angle_range, angle_range)
    dy, dx = rows - center[0], cols - center[1]
    cos, sin = np.cos(angle), np.sin(angle)
    return cos * dx + sin * dy, -sin * dx + cos * dy


def draw_ellipse(resolution: int, rng: np.random.Generator) -> np.ndarray:
    u, v = _frame(resolution, rng, np.pi)
    a, b = rng.uniform(0.15, 0.4, size=2) * resolution
    return (u / a) ** 2 + (v / b) ** 2 <= 1.0


def draw_rounded_rectangle(resolution: int, rng: np.random.Generator) -> np.ndarray:
    u, v = _frame(resolution, rng, np.pi / 6)
    half_w, half_h = rng.uniform(0.15, 0.38, size=2) * resolution
    radius = rng.uniform(0.1, 0.5) * min(half_w, half_h)
    qx = np.abs(u) - (half_w - radius)
    qy = np.abs(v) - (half_h - radius)
    outside = np.hypot(np.maximum(qx, 0.0), np.maximum(qy, 0.0))
    inside = np.minimum(np.maximum(qx, qy), 0.0)
    return outside + inside <= radius


def draw_cross(resolution: int, rng: np.random.Generator) -> np.ndarray:
    u, v = _frame(resolution, rng, np.pi / 8)
    arm = rng.uniform(0.25, 0.42) * resolution
    thickness = rng.uniform(0.07, 0.14) * resolution
    vertical_offset = rng.uniform(-0.1, 0.1) * resolution
    horizontal = (np.abs(u) <= arm) & (np.abs(v - vertical_offset) <= thickness)
    vertical = (np.abs(v) <= arm) & (np.abs(u) <= thickness)
    return horizontal | vertical


SHAPES: Dict[str, Callable[[int, np.random.Generator], np.ndarray]] = {
    "ellipse": draw_ellipse,
    "rounded_rectangle": draw_rounded_rectangle,
    "cross": draw_cross,
}


def generate_shapes(
    kind: str, count: int, resolution: int, rng: np.random.Generator
) -> List[Silhouette]:
    """Procedural binary silhouettes; kind "mixed" cycles through every family."""
    if kind != "mixed" and kind not in SHAPES:
        raise DatasetError.invalid(
            "synth", "unknown shape family", kind=kind, known=sorted(SHAPES) + ["mixed"]
        )
    if count < 1 or resolution < 8:
        raise DatasetError.invalid(
            "synth", "count must be >= 1 and resolution >= 8", count=count, resolution=resolution
        )
    families = sorted(SHAPES) if kind == "mixed" else [kind]
    return [
        Silhouette(
            values=SHAPES[families[index % len(families)]](resolution, rng).astype(np.float64)
        )
        for index in range(count)
    ]


def write_synthetic_dataset(
    directory: str, kind: str, count: int, resolution: int, seed: int
) -> List[str]:
    """Writes count PNG silhouettes named <kind>_<index>.png and returns their paths."""
    shapes = generate_shapes(kind, count, resolution, np.random.default_rng(seed))
    os.makedirs(directory, exist_ok=True)
    paths = []
    for index, shape in enumerate(shapes):
        path = os.path.join(directory, f"{kind}_{index:04d}.png")
        save_silhouette(shape, path)
        paths.append(path)
    return paths
