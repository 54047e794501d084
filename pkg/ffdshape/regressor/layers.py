from typing import Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def conv2d_forward(
    x: np.ndarray, weight: np.ndarray, bias: np.ndarray, padding: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Stride-1 zero-padded convolution of a (C, H, W) activation.

    Returns
    -------
        The (F, H', W') output and the im2col matrix the backward pass needs.
    """
    filters, channels, kernel, _ = weight.shape
    padded = np.pad(x, ((0, 0), (padding, padding), (padding, padding)))
    windows = sliding_window_view(padded, (kernel, kernel), axis=(1, 2))
    out_h, out_w = windows.shape[1], windows.shape[2]
    cols = windows.transpose(1, 2, 0, 3, 4).reshape(out_h * out_w, channels * kernel * kernel)
    out = (cols @ weight.reshape(filters, -1).T).T.reshape(filters, out_h, out_w)
    return out + bias[:, None, None], cols


def conv2d_backward(
    grad_out: np.ndarray,
    cols: np.ndarray,
    input_shape: Tuple[int, ...],
    weight: np.ndarray,
    padding: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (grad_input, grad_weight, grad_bias)."""
    filters, channels, kernel, _ = weight.shape
    out_h, out_w = grad_out.shape[1], grad_out.shape[2]
    flat = grad_out.reshape(filters, -1)
    grad_weight = (flat @ cols).reshape(weight.shape)
    grad_bias = flat.sum(axis=1)

    grad_cols = (weight.reshape(filters, -1).T @ flat).reshape(
        channels, kernel, kernel, out_h, out_w
    )
    height, width = input_shape[1], input_shape[2]
    grad_padded = np.zeros((channels, height + 2 * padding, width + 2 * padding))
    for i in range(kernel):
        for j in range(kernel):
            grad_padded[:, i : i + out_h, j : j + out_w] += grad_cols[:, i, j]
    grad_input = grad_padded[:, padding : padding + height, padding : padding + width]
    return grad_input, grad_weight, grad_bias


def _pool_blocks(x: np.ndarray) -> np.ndarray:
    channels, height, width = x.shape
    out_h, out_w = height // 2, width // 2
    cropped = x[:, : 2 * out_h, : 2 * out_w]
    return (
        cropped.reshape(channels, out_h, 2, out_w, 2)
        .transpose(0, 1, 3, 2, 4)
        .reshape(channels, out_h, out_w, 4)
    )


def maxpool_forward(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """2x2 stride-2 max-pool; odd trailing rows/columns are dropped. Ties go to the first index."""
    blocks = _pool_blocks(x)
    argmax = np.argmax(blocks, axis=3)
    out = np.take_along_axis(blocks, argmax[..., None], axis=3)[..., 0]
    return out, argmax


def maxpool_backward(
    grad_out: np.ndarray, argmax: np.ndarray, input_shape: Tuple[int, ...]
) -> np.ndarray:
    channels, out_h, out_w = grad_out.shape
    grad_blocks = np.zeros((channels, out_h, out_w, 4))
    np.put_along_axis(grad_blocks, argmax[..., None], grad_out[..., None], axis=3)
    grad_input = np.zeros(input_shape)
    grad_input[:, : 2 * out_h, : 2 * out_w] = (
        grad_blocks.reshape(channels, out_h, out_w, 2, 2)
        .transpose(0, 1, 3, 2, 4)
        .reshape(channels, 2 * out_h, 2 * out_w)
    )
    return grad_input


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def relu_backward(grad_out: np.ndarray, pre_activation: np.ndarray) -> np.ndarray:
    return grad_out * (pre_activation > 0.0)


def dense_forward(x: np.ndarray, weight: np.ndarray, bias: np.ndarray) -> np.ndarray:
    return weight @ x + bias


def dense_backward(
    grad_out: np.ndarray, x: np.ndarray, weight: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (grad_input, grad_weight, grad_bias)."""
    return weight.T @ grad_out, np.outer(grad_out, x), np.array(grad_out)
