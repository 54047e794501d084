from typing import Tuple

import numpy as np

from ffdshape.grids.models.normalized_coord import normalized_to_pixel, regular_grid
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.warp_record import WarpRecord
from ffdshape.sampler.models.dense_warp import DenseWarp
from ffdshape.sampler.models.warp_gradients import WarpGradients
from ffdshape.sampler.sampler_errors import SamplerError

ZEROS = "zeros"
BORDER = "border"


def interpolation_matrix(size: int, nodes: int) -> np.ndarray:
    """
    size x nodes matrix of linear interpolation weights: pixel i sits at node coordinate
    i * (nodes - 1) / (size - 1), so the nodes span the whole axis.
    """
    position = np.arange(size) * (nodes - 1) / (size - 1)
    lower = np.minimum(np.floor(position).astype(np.int64), nodes - 2)
    frac = position - lower
    weights = np.zeros((size, nodes))
    pixels = np.arange(size)
    weights[pixels, lower] = 1.0 - frac
    weights[pixels, lower + 1] += frac
    return weights


def _locate(
    px: np.ndarray, py: np.ndarray, height: int, width: int, padding: str
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    if padding == BORDER:
        cx = np.clip(px, 0.0, width - 1.0)
        cy = np.clip(py, 0.0, height - 1.0)
        x0 = np.minimum(np.floor(cx), width - 2).astype(np.int64)
        y0 = np.minimum(np.floor(cy), height - 2).astype(np.int64)
    else:
        cx, cy = px, py
        x0 = np.floor(cx).astype(np.int64)
        y0 = np.floor(cy).astype(np.int64)
    return x0, y0, cx - x0, cy - y0


def _gather(image: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    height, width = image.shape[:2]
    inside = (rows >= 0) & (rows < height) & (cols >= 0) & (cols < width)
    values = np.zeros(rows.shape + image.shape[2:], dtype=np.float64)
    values[inside] = image[rows[inside], cols[inside]]
    return values


def _corners(
    image: np.ndarray, x0: np.ndarray, y0: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    return (
        _gather(image, y0, x0),
        _gather(image, y0, x0 + 1),
        _gather(image, y0 + 1, x0),
        _gather(image, y0 + 1, x0 + 1),
    )


def _bilinear(
    image: np.ndarray, px: np.ndarray, py: np.ndarray, padding: str = ZEROS
) -> np.ndarray:
    height, width = image.shape[:2]
    x0, y0, fx, fy = _locate(px, py, height, width, padding)
    v00, v01, v10, v11 = _corners(image, x0, y0)
    if image.ndim == 3:
        fx, fy = fx[..., None], fy[..., None]
    return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v01) + fy * (  # type: ignore
        (1.0 - fx) * v10 + fx * v11
    )


def _bilinear_derivatives(
    image: np.ndarray, px: np.ndarray, py: np.ndarray, padding: str = ZEROS
) -> Tuple[np.ndarray, np.ndarray]:
    """d(sample)/d(px) and d(sample)/d(py) of the piecewise-linear kernel."""
    height, width = image.shape
    x0, y0, fx, fy = _locate(px, py, height, width, padding)
    v00, v01, v10, v11 = _corners(image, x0, y0)
    d_px = (1.0 - fy) * (v01 - v00) + fy * (v11 - v10)
    d_py = (1.0 - fx) * (v10 - v00) + fx * (v11 - v01)
    if padding == BORDER:
        d_px = np.where((px > 0.0) & (px < width - 1.0), d_px, 0.0)
        d_py = np.where((py > 0.0) & (py < height - 1.0), d_py, 0.0)
    return d_px, d_py


def _scatter(
    grad_output: np.ndarray,
    px: np.ndarray,
    py: np.ndarray,
    shape: Tuple[int, int],
    padding: str = ZEROS,
) -> np.ndarray:
    """Adjoint of _bilinear with respect to the sampled image; fixed scan order."""
    height, width = shape
    x0, y0, fx, fy = _locate(px, py, height, width, padding)
    grad = np.zeros(shape, dtype=np.float64)
    for rows, cols, weight in (
        (y0, x0, (1.0 - fx) * (1.0 - fy)),
        (y0, x0 + 1, fx * (1.0 - fy)),
        (y0 + 1, x0, (1.0 - fx) * fy),
        (y0 + 1, x0 + 1, fx * fy),
    ):
        inside = (rows >= 0) & (rows < height) & (cols >= 0) & (cols < width)
        np.add.at(grad, (rows[inside], cols[inside]), (weight * grad_output)[inside])
    return grad


def _pixel_coordinates(warp: DenseWarp, height: int, width: int) -> Tuple[np.ndarray, np.ndarray]:
    return normalized_to_pixel(warp.x, width), normalized_to_pixel(warp.y, height)


def upsample(control: ControlWarp, height: int, width: int) -> DenseWarp:
    if height < 2 or width < 2:
        raise SamplerError.invalid(
            "upsample", "output must be at least 2x2", height=height, width=width
        )
    rows = interpolation_matrix(height, control.m)
    cols = interpolation_matrix(width, control.n)
    return DenseWarp(x=rows @ control.x @ cols.T, y=rows @ control.y @ cols.T)


def upsample_backward(control: ControlWarp, grad_dense: DenseWarp) -> WarpGradients:
    rows = interpolation_matrix(grad_dense.height, control.m)
    cols = interpolation_matrix(grad_dense.width, control.n)
    d_control_x = rows.T @ grad_dense.x @ cols
    d_control_y = rows.T @ grad_dense.y @ cols
    return WarpGradients(
        d_control_x=d_control_x,
        d_control_y=d_control_y,
        d_offset_x=float(d_control_x.sum()),
        d_offset_y=float(d_control_y.sum()),
    )


def _check_same_shape(operation: str, expected: Tuple[int, int], got: Tuple[int, int]) -> None:
    if tuple(expected) != tuple(got):
        raise SamplerError.invalid(
            operation, "dimension mismatch", expected=list(expected), got=list(got)
        )


def resample(source: Silhouette, warp: DenseWarp) -> Silhouette:
    """Backward warp: output[p] samples the source at warp[p], reading 0 outside the image."""
    _check_same_shape("resample", source.shape, warp.shape)
    px, py = _pixel_coordinates(warp, source.height, source.width)
    return Silhouette(values=_bilinear(source.values, px, py, ZEROS))


def resample_backward(
    source: Silhouette, warp: DenseWarp, grad_output: np.ndarray
) -> Tuple[DenseWarp, np.ndarray]:
    """Gradients of resample with respect to the dense warp coordinates and the source pixels."""
    _check_same_shape("resample_backward", source.shape, warp.shape)
    _check_same_shape("resample_backward", source.shape, np.shape(grad_output))  # type: ignore
    height, width = source.shape
    px, py = _pixel_coordinates(warp, height, width)
    d_px, d_py = _bilinear_derivatives(source.values, px, py, ZEROS)
    grad_warp = DenseWarp(
        x=grad_output * d_px * (width - 1) / 2.0,
        y=grad_output * d_py * (height - 1) / 2.0,
    )
    grad_source = _scatter(grad_output, px, py, (height, width), ZEROS)
    return grad_warp, grad_source


def compose(outer: DenseWarp, inner: DenseWarp) -> DenseWarp:
    """
    result[p] = inner sampled at outer[p], so that resampling with the result equals
    resampling with inner and then with outer. Coordinate fields are border-clamped.
    """
    _check_same_shape("compose", inner.shape, outer.shape)
    px, py = _pixel_coordinates(outer, inner.height, inner.width)
    return DenseWarp(
        x=_bilinear(inner.x, px, py, BORDER), y=_bilinear(inner.y, px, py, BORDER)
    )


def compose_backward(
    outer: DenseWarp, inner: DenseWarp, grad: DenseWarp
) -> Tuple[DenseWarp, DenseWarp]:
    _check_same_shape("compose_backward", inner.shape, outer.shape)
    height, width = inner.shape
    px, py = _pixel_coordinates(outer, height, width)
    dxx, dxy = _bilinear_derivatives(inner.x, px, py, BORDER)
    dyx, dyy = _bilinear_derivatives(inner.y, px, py, BORDER)
    grad_outer = DenseWarp(
        x=(grad.x * dxx + grad.y * dyx) * (width - 1) / 2.0,
        y=(grad.x * dxy + grad.y * dyy) * (height - 1) / 2.0,
    )
    grad_inner = DenseWarp(
        x=_scatter(grad.x, px, py, (height, width), BORDER),
        y=_scatter(grad.y, px, py, (height, width), BORDER),
    )
    return grad_outer, grad_inner


def rotation_warp(theta: float, height: int, width: int) -> DenseWarp:
    """
    Lookup at p is p rotated by -theta about the image center, so the output appears
    rotated by +theta.
    """
    if not np.isfinite(theta):
        raise SamplerError.invalid("rotation_warp", "theta must be finite")
    x, y = regular_grid(height, width)
    cos, sin = np.cos(theta), np.sin(theta)
    return DenseWarp(x=cos * x + sin * y, y=-sin * x + cos * y)


def rotation_warp_derivative(theta: float, height: int, width: int) -> DenseWarp:
    x, y = regular_grid(height, width)
    cos, sin = np.cos(theta), np.sin(theta)
    return DenseWarp(x=-sin * x + cos * y, y=-cos * x - sin * y)


def scaling_warp(scale_x: float, scale_y: float, height: int, width: int) -> DenseWarp:
    """Magnifies the output by (scale_x, scale_y) about the image center."""
    x, y = regular_grid(height, width)
    return DenseWarp(x=x / scale_x, y=y / scale_y)


def affine_warp(matrix: np.ndarray, height: int, width: int) -> DenseWarp:
    """Lookup (x', y') = matrix @ (x, y, 1) for a 2x3 matrix in normalized coordinates."""
    x, y = regular_grid(height, width)
    a = np.asarray(matrix, dtype=np.float64).reshape(2, 3)
    return DenseWarp(
        x=a[0, 0] * x + a[0, 1] * y + a[0, 2], y=a[1, 0] * x + a[1, 1] * y + a[1, 2]
    )


def sample_image(image: np.ndarray, warp: DenseWarp, nearest: bool = False) -> np.ndarray:
    """
    Warps an arbitrary H x W (x C) array, zero outside. Nearest lookup keeps categorical
    values such as label ids intact.
    """
    _check_same_shape("sample_image", image.shape[:2], warp.shape)
    height, width = image.shape[:2]
    px, py = _pixel_coordinates(warp, height, width)
    if nearest:
        return _gather(image, np.rint(py).astype(np.int64), np.rint(px).astype(np.int64))
    return _bilinear(np.asarray(image, dtype=np.float64), px, py, ZEROS)


def warp_record_lookup(record: WarpRecord) -> DenseWarp:
    """Rebuilds the dense lookup a stored warp was applied with."""
    dense = upsample(record.control, record.height, record.width)
    if record.theta is None:
        return dense
    return compose(dense, rotation_warp(record.theta, record.height, record.width))
