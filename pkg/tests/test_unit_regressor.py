import numpy as np
import pytest

from ffdshape.grids import Silhouette
from ffdshape.optim import AdamState
from ffdshape.parametrization import (
    DifferentialWarp,
    RegularizationMode,
    build_control_warp,
    identity_control_warp,
)
from ffdshape.regressor import (
    PARAMETER_ORDER,
    Architecture,
    RegressorError,
    RegressorParams,
    adam_step,
    backward,
    forward,
    init_params,
    predict,
    sum_gradients,
)
from ffdshape.regressor.layers import (
    conv2d_backward,
    conv2d_forward,
    maxpool_backward,
    maxpool_forward,
)


def random_pair(rng: np.random.Generator, size: int):
    return (
        Silhouette(values=rng.uniform(size=(size, size))),
        Silhouette(values=rng.uniform(size=(size, size))),
    )


def randomized(params: RegressorParams, rng: np.random.Generator) -> RegressorParams:
    arrays = params.as_arrays()
    arrays["fc2_weight"] = rng.normal(scale=0.3, size=arrays["fc2_weight"].shape)
    arrays["conv1_bias"] = rng.normal(scale=0.1, size=arrays["conv1_bias"].shape)
    return RegressorParams.from_arrays(params.architecture, arrays)


@pytest.mark.unit
class TestArchitecture:
    def should_follow_the_shape_table_at_64(self):
        architecture = Architecture(resolution=64, m=8, n=8)

        assert [layer.output_size for layer in architecture.layers] == [32, 16, 9, 5]
        assert [layer.kernel for layer in architecture.layers] == [5, 5, 2, 4]
        assert architecture.flat_features == 500
        assert architecture.outputs == 128

    def should_count_parameters(self):
        assert Architecture(resolution=64, m=8, n=8).parameter_count() == 31790

    def should_shrink_for_small_inputs(self):
        architecture = Architecture(resolution=16, m=2, n=2)

        assert [layer.output_size for layer in architecture.layers] == [8, 4, 3, 2]
        assert architecture.flat_features == 80

    def should_add_a_rotation_output(self):
        assert Architecture(m=8, n=8, learn_rotation=True).outputs == 129

    def should_reject_collapsing_resolution(self):
        with pytest.raises(ValueError):
            Architecture(resolution=4)


@pytest.mark.unit
class TestLayers:
    def setup_method(self):
        self.rng = np.random.default_rng(0)

    def should_match_direct_convolution_loop(self):
        x = self.rng.normal(size=(2, 7, 6))
        weight = self.rng.normal(size=(3, 2, 5, 5))
        bias = self.rng.normal(size=3)

        out, _ = conv2d_forward(x, weight, bias, padding=2)

        padded = np.pad(x, ((0, 0), (2, 2), (2, 2)))
        expected = np.zeros((3, 7, 6))
        for f in range(3):
            for i in range(7):
                for j in range(6):
                    window = padded[:, i : i + 5, j : j + 5]
                    expected[f, i, j] = np.sum(window * weight[f]) + bias[f]
        assert np.allclose(out, expected, atol=1e-12)

    def should_grow_output_with_even_kernel(self):
        out, _ = conv2d_forward(np.ones((1, 8, 8)), np.ones((1, 1, 2, 2)), np.zeros(1), padding=1)

        assert out.shape == (1, 9, 9)
        assert out[0, 0, 0] == 1.0 and out[0, 4, 4] == 4.0

    def should_pass_biases_through_rectifier_on_blank_input(self):
        params = init_params(self.rng, 8, 8, 64)
        blank = Silhouette.zeros(64, 64)

        _, cache = forward(params, blank, blank)

        expected = np.broadcast_to(params.conv1_bias[:, None, None], (20, 32, 32))
        assert np.array_equal(cache.blocks[0].pre_activation, expected)

    def should_satisfy_convolution_adjoint(self):
        x = self.rng.normal(size=(2, 6, 6))
        weight = self.rng.normal(size=(3, 2, 4, 4))
        out, cols = conv2d_forward(x, weight, np.zeros(3), padding=2)
        grad_out = self.rng.normal(size=out.shape)

        grad_input, _, _ = conv2d_backward(grad_out, cols, x.shape, weight, padding=2)

        assert np.sum(out * grad_out) == pytest.approx(np.sum(x * grad_input), rel=1e-10)

    def should_route_pool_gradient_to_the_first_maximum(self):
        x = np.array([[[1.0, 1.0, 0.0], [0.0, 0.5, 0.0], [9.0, 9.0, 9.0]]])

        out, argmax = maxpool_forward(x)
        grad = maxpool_backward(np.ones_like(out), argmax, x.shape)

        assert out.shape == (1, 1, 1)
        assert grad[0].tolist() == [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]


@pytest.mark.unit
class TestRegressor:
    def setup_method(self):
        self.rng = np.random.default_rng(1)

    def should_output_identity_warp_at_initialization(self):
        params = init_params(self.rng, 8, 8, 64)
        identity = identity_control_warp(8, 8)

        for _ in range(100):
            source, target = random_pair(self.rng, 64)
            output, _ = forward(params, source, target)
            control = build_control_warp(output.raw, RegularizationMode.TV_MONOTONIC)
            assert control.max_abs_difference(identity) < 1e-9

    def should_warp_source_onto_itself_at_initialization(self, given_square_pair):
        params = init_params(self.rng, 8, 8, 64)
        source, target = given_square_pair

        _, result = predict(params, RegularizationMode.TV_MONOTONIC, source, target)

        assert np.max(np.abs(result.estimated.values - source.values)) < 1e-9

    def should_match_parameter_order(self):
        params = init_params(self.rng, 4, 4, 32, learn_rotation=True)

        assert list(params.as_arrays()) == PARAMETER_ORDER
        assert params.count() == params.architecture.parameter_count()

    def should_be_reproducible_from_seed(self):
        first = init_params(np.random.default_rng(9), 8, 8, 64)
        second = init_params(np.random.default_rng(9), 8, 8, 64)

        for name in PARAMETER_ORDER:
            assert np.array_equal(first.as_arrays()[name], second.as_arrays()[name]), name

    def should_fail_on_resolution_mismatch(self):
        params = init_params(self.rng, 2, 2, 16)

        with pytest.raises(RegressorError):
            forward(params, Silhouette.zeros(32, 32), Silhouette.zeros(32, 32))

    def should_match_finite_differences_on_small_network(self):
        params = randomized(init_params(self.rng, 2, 2, 16, learn_rotation=True), self.rng)
        source, target = random_pair(self.rng, 16)
        direction_dx, direction_dy = self.rng.normal(size=(2, 2)), self.rng.normal(size=(2, 2))
        direction_theta = 0.7

        def objective(candidate: RegressorParams) -> float:
            output, _ = forward(candidate, source, target)
            raw = output.raw
            return float(
                np.sum(raw.dx * direction_dx)
                + np.sum(raw.dy * direction_dy)
                + 0.3 * raw.offset_x
                - 0.2 * raw.offset_y
                + direction_theta * output.theta
            )

        _, cache = forward(params, source, target)
        grad_raw = DifferentialWarp(dx=direction_dx, dy=direction_dy, offset_x=0.3, offset_y=-0.2)
        grads = backward(params, cache, grad_raw, direction_theta)

        arrays = params.as_arrays()
        step = 1e-7
        for _ in range(50):
            name = PARAMETER_ORDER[int(self.rng.integers(len(PARAMETER_ORDER)))]
            index = tuple(int(self.rng.integers(size)) for size in arrays[name].shape)
            up = {k: np.array(v) for k, v in arrays.items()}
            down = {k: np.array(v) for k, v in arrays.items()}
            up[name][index] += step
            down[name][index] -= step
            numeric = (
                objective(RegressorParams.from_arrays(params.architecture, up))
                - objective(RegressorParams.from_arrays(params.architecture, down))
            ) / (2 * step)
            analytic = float(grads[name][index])
            assert abs(analytic - numeric) <= 1e-3 * max(abs(numeric), 1e-3), name

    def should_sum_gradients_in_order(self):
        first = {"w": np.array([1.0, 2.0])}
        second = {"w": np.array([0.5, -1.0])}

        assert sum_gradients([first, second])["w"].tolist() == [1.5, 1.0]
        with pytest.raises(RegressorError):
            sum_gradients([])

    def should_apply_adam_step_to_every_parameter(self):
        params = init_params(self.rng, 2, 2, 16)
        grads = {name: np.ones_like(value) for name, value in params.as_arrays().items()}

        updated, state = adam_step(params, grads, AdamState(), 0.01)

        assert state.step == 1
        assert float(updated.w0_x) == pytest.approx(float(params.w0_x) - 0.01, abs=1e-9)
