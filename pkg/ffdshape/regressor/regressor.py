from typing import Dict, List, NamedTuple, Tuple, Union

import numpy as np

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.optim.adam import AdamState
from ffdshape.optim.adam import adam_step as adam_update
from ffdshape.parametrization.models.differential_warp import DifferentialWarp
from ffdshape.parametrization.parametrization import identity_differential
from ffdshape.regressor.layers import (
    conv2d_backward,
    conv2d_forward,
    dense_backward,
    dense_forward,
    maxpool_backward,
    maxpool_forward,
    relu,
    relu_backward,
)
from ffdshape.regressor.models.architecture import Architecture
from ffdshape.regressor.models.regressor_params import RegressorParams
from ffdshape.regressor.regressor_errors import RegressorError


class BlockCache(NamedTuple):
    input_shape: Tuple[int, ...]
    pool_argmax: np.ndarray
    pooled_shape: Tuple[int, ...]
    cols: np.ndarray
    pre_activation: np.ndarray


class ForwardCache(NamedTuple):
    blocks: List[BlockCache]
    flat: np.ndarray
    hidden_pre: np.ndarray
    hidden: np.ndarray


class RegressorOutput(NamedTuple):
    raw: DifferentialWarp
    theta: Union[float, None]


def _glorot(
    rng: np.random.Generator, shape: Tuple[int, ...], fan_in: int, fan_out: int
) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_params(
    rng: np.random.Generator,
    m: int,
    n: int,
    resolution: int,
    learn_rotation: bool = False,
) -> RegressorParams:
    """
    Random convolution and fc1 weights; fc2 weights at zero with biases holding the
    identity differential, so a fresh network yields the identity warp for any input.
    """
    try:
        architecture = Architecture(resolution=resolution, m=m, n=n, learn_rotation=learn_rotation)
    except ValueError as exc:
        raise RegressorError.from_validation("init_params", exc)

    arrays: Dict[str, np.ndarray] = {}
    for layer in architecture.layers:
        receptive = layer.kernel * layer.kernel
        arrays[f"{layer.name}_weight"] = _glorot(
            rng,
            (layer.out_channels, layer.in_channels, layer.kernel, layer.kernel),
            layer.in_channels * receptive,
            layer.out_channels * receptive,
        )
        arrays[f"{layer.name}_bias"] = np.zeros(layer.out_channels)
    arrays["fc1_weight"] = _glorot(
        rng,
        (architecture.hidden, architecture.flat_features),
        architecture.flat_features,
        architecture.hidden,
    )
    arrays["fc1_bias"] = np.zeros(architecture.hidden)

    identity = identity_differential(m, n)
    bias = [identity.dx.ravel(), identity.dy.ravel()]
    if learn_rotation:
        bias.append(np.zeros(1))
    arrays["fc2_weight"] = np.zeros((architecture.outputs, architecture.hidden))
    arrays["fc2_bias"] = np.concatenate(bias)
    arrays["w0_x"] = np.array(identity.offset_x)
    arrays["w0_y"] = np.array(identity.offset_y)
    return RegressorParams.from_arrays(architecture, arrays)


def stack_inputs(
    params: RegressorParams, source: Silhouette, partial_target: Silhouette
) -> np.ndarray:
    resolution = params.architecture.resolution
    for name, image in (("source", source), ("partial_target", partial_target)):
        if image.shape != (resolution, resolution):
            raise RegressorError.invalid(
                "forward",
                f"{name} does not match the network resolution",
                expected=[resolution, resolution],
                got=list(image.shape),
            )
    return np.stack([source.values, partial_target.values])


def forward(
    params: RegressorParams, source: Silhouette, partial_target: Silhouette
) -> Tuple[RegressorOutput, ForwardCache]:
    """
    Four [max-pool -> conv -> ReLU] blocks over the stacked (source, partial target)
    pair, then fc1 + ReLU and fc2, reshaped into the raw differential warp.
    """
    architecture = params.architecture
    activation = stack_inputs(params, source, partial_target)

    blocks = []
    for layer in architecture.layers:
        pooled, argmax = maxpool_forward(activation)
        pre, cols = conv2d_forward(
            pooled,
            getattr(params, f"{layer.name}_weight"),
            getattr(params, f"{layer.name}_bias"),
            layer.padding,
        )
        blocks.append(BlockCache(activation.shape, argmax, pooled.shape, cols, pre))
        activation = relu(pre)

    flat = activation.reshape(-1)
    hidden_pre = dense_forward(flat, params.fc1_weight, params.fc1_bias)
    hidden = relu(hidden_pre)
    out = dense_forward(hidden, params.fc2_weight, params.fc2_bias)

    m, n = architecture.m, architecture.n
    cells = m * n
    raw = DifferentialWarp(
        dx=out[:cells].reshape(m, n),
        dy=out[cells : 2 * cells].reshape(m, n),
        offset_x=float(params.w0_x),
        offset_y=float(params.w0_y),
    )
    theta = float(out[2 * cells]) if architecture.learn_rotation else None
    return RegressorOutput(raw, theta), ForwardCache(blocks, flat, hidden_pre, hidden)


def backward(
    params: RegressorParams,
    cache: ForwardCache,
    grad_raw: DifferentialWarp,
    grad_theta: float = 0.0,
) -> Dict[str, np.ndarray]:
    """
    Reverse-mode gradients of every parameter given the gradient of the raw differential
    warp (and of the rotation output when the network learns one).
    """
    architecture = params.architecture
    pieces = [grad_raw.dx.ravel(), grad_raw.dy.ravel()]
    if architecture.learn_rotation:
        pieces.append(np.array([grad_theta]))
    grad_out = np.concatenate(pieces)

    grads: Dict[str, np.ndarray] = {}
    grad_hidden, grads["fc2_weight"], grads["fc2_bias"] = dense_backward(
        grad_out, cache.hidden, params.fc2_weight
    )
    grad_hidden_pre = relu_backward(grad_hidden, cache.hidden_pre)
    grad_flat, grads["fc1_weight"], grads["fc1_bias"] = dense_backward(
        grad_hidden_pre, cache.flat, params.fc1_weight
    )

    grad_activation = grad_flat.reshape(cache.blocks[-1].pre_activation.shape)
    for layer, block in reversed(list(zip(architecture.layers, cache.blocks))):
        grad_pre = relu_backward(grad_activation, block.pre_activation)
        grad_pooled, grad_weight, grad_bias = conv2d_backward(
            grad_pre,
            block.cols,
            block.pooled_shape,
            getattr(params, f"{layer.name}_weight"),
            layer.padding,
        )
        grads[f"{layer.name}_weight"] = grad_weight
        grads[f"{layer.name}_bias"] = grad_bias
        grad_activation = maxpool_backward(grad_pooled, block.pool_argmax, block.input_shape)

    grads["w0_x"] = np.array(grad_raw.offset_x)
    grads["w0_y"] = np.array(grad_raw.offset_y)
    return grads


def sum_gradients(gradients: List[Dict[str, np.ndarray]]) -> Dict[str, np.ndarray]:
    """Sums per-sample gradients in list order."""
    if not gradients:
        raise RegressorError.invalid("sum_gradients", "no gradients to sum")
    total = {name: np.array(value, dtype=np.float64) for name, value in gradients[0].items()}
    for sample in gradients[1:]:
        for name, value in sample.items():
            total[name] = total[name] + value
    return total


def adam_step(
    params: RegressorParams,
    grads: Dict[str, np.ndarray],
    state: AdamState,
    learning_rate: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> Tuple[RegressorParams, AdamState]:
    arrays, state = adam_update(
        params.as_arrays(), grads, state, learning_rate, beta1=beta1, beta2=beta2, eps=eps
    )
    try:
        return RegressorParams.from_arrays(params.architecture, arrays), state
    except ValueError as exc:
        raise RegressorError.from_validation("adam_step", exc)
