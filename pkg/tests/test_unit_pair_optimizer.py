import csv
import json
import os

import numpy as np
import pytest

from ffdshape.config import Config
from ffdshape.grids import Silhouette, iou
from ffdshape.optim import AdamState, adam_step
from ffdshape.pair_optimizer import (
    Aligner,
    AlignmentError,
    AlignmentResult,
    OptimizeConfig,
    align_pair,
    align_pair_with_rotation,
)
from ffdshape.parametrization import identity_control_warp


@pytest.mark.unit
class TestAdam:
    def should_match_closed_form_trajectory_for_constant_gradient(self):
        params = {"w": np.array(1.5)}
        state = AdamState()
        gradient, learning_rate, eps = 0.3, 0.01, 1e-8

        for _ in range(25):
            params, state = adam_step(params, {"w": np.array(gradient)}, state, learning_rate)

        # bias-corrected moments equal g and g^2 exactly for a constant gradient
        expected = 1.5 - 25 * learning_rate * gradient / (abs(gradient) + eps)
        assert float(params["w"]) == pytest.approx(expected, abs=1e-12)
        assert state.step == 25

    def should_match_single_step_on_quadratic(self):
        params = {"w": np.array(2.0)}

        updated, state = adam_step(params, {"w": 2.0 * params["w"]}, AdamState(), 0.1)

        m_hat = (0.1 * 4.0) / 0.1
        v_hat = (0.001 * 16.0) / (1.0 - 0.999)
        expected = 2.0 - 0.1 * m_hat / (np.sqrt(v_hat) + 1e-8)
        assert float(updated["w"]) == pytest.approx(expected, abs=1e-12)
        assert float(params["w"]) == 2.0
        assert state.first_moment["w"] == pytest.approx(0.4)


@pytest.mark.unit
class TestAlignPair:
    def should_stay_at_identity_for_identical_shapes(self, given_centered_square):
        square = given_centered_square

        result = align_pair(square, square, OptimizeConfig(max_iters=50))

        assert result.converged
        assert result.best_total <= 1e-6
        assert result.control.max_abs_difference(identity_control_warp(8, 8)) < 1e-3

    def should_recover_a_translation(self, given_square_pair):
        source, target = given_square_pair

        result = align_pair(source, target, OptimizeConfig(max_iters=1000))

        assert iou(result.warped, target) >= 0.95

    def should_recover_a_scaling_through_monotonic_iterates(self, given_scaled_square_pair):
        source, target = given_scaled_square_pair
        monotonic = []

        result = align_pair(
            source,
            target,
            OptimizeConfig(max_iters=1000),
            on_iteration=lambda _, control: monotonic.append(control.is_axially_monotonic()),
        )

        assert iou(result.warped, target) >= 0.95
        assert len(monotonic) == result.iters_run
        assert all(monotonic)

    def should_never_return_worse_than_identity(self, given_square_pair):
        result = align_pair(*given_square_pair, OptimizeConfig(max_iters=20))

        assert result.best_total <= result.loss_trace[0].total
        assert result.iters_run == len(result.loss_trace) <= 20

    def should_not_depend_on_the_seed(self, given_square_pair):
        first = align_pair(*given_square_pair, OptimizeConfig(max_iters=30, seed=0))
        second = align_pair(*given_square_pair, OptimizeConfig(max_iters=30, seed=123))

        assert first.control.max_abs_difference(second.control) == 0.0
        assert first.best_total == second.best_total

    def should_keep_monotonic_control_grid(self, given_square_pair):
        result = align_pair(*given_square_pair, OptimizeConfig(max_iters=100))

        assert result.control.is_axially_monotonic()

    def should_fail_on_dimension_mismatch(self):
        with pytest.raises(AlignmentError) as error:
            align_pair(Silhouette.zeros(8, 8), Silhouette.zeros(8, 9), OptimizeConfig())
        assert error.value.code == 2

    def should_fail_on_empty_source(self, given_centered_square):
        with pytest.raises(AlignmentError):
            align_pair(Silhouette.zeros(64, 64), given_centered_square, OptimizeConfig())

    def should_abort_on_divergence(self, given_square_pair):
        config = OptimizeConfig(max_iters=200, learning_rate=50.0, divergence_factor=1.01)

        with pytest.raises(AlignmentError) as error:
            align_pair(*given_square_pair, config)
        assert error.value.code == 3


@pytest.mark.unit
class TestAlignPairWithRotation:
    def should_hold_the_grid_while_the_rotation_warms_up(self, given_square_pair):
        controls = []
        config = OptimizeConfig(grid_m=4, grid_n=4, max_iters=8, rotation_warmup=5)

        align_pair_with_rotation(
            *given_square_pair, config, on_iteration=lambda _, control: controls.append(control)
        )

        identity = identity_control_warp(4, 4)
        assert len(controls) == 8
        assert all(control.max_abs_difference(identity) < 1e-12 for control in controls[:6])
        assert controls[6].max_abs_difference(identity) > 1e-3


@pytest.mark.unit
class TestAligner:
    def setup_method(self):
        self.aligner = Aligner.from_config(
            Config(grid_m=4, grid_n=4), OptimizeConfig(grid_m=4, grid_n=4, max_iters=30)
        )

    def should_return_success_with_alignment_result(self, given_square_pair):
        result = self.aligner.align(*given_square_pair)

        result.assert_success(value_is_instance_of=AlignmentResult)
        assert result.value.control.m == 4

    def should_return_failure_on_invalid_pair(self):
        result = self.aligner.align(Silhouette.zeros(8, 8), Silhouette.zeros(8, 8))

        result.assert_failure(value_is_instance_of=AlignmentError)

    def should_align_with_rotation(self, given_square_pair):
        result = self.aligner.align(*given_square_pair, rotation=True)

        assert result.unwrap().theta is not None

    def should_save_warp_image_and_trace(self, tmp_path, given_square_pair):
        alignment = self.aligner.align(*given_square_pair).unwrap()
        out_dir = str(tmp_path / "align")

        self.aligner.save(alignment, out_dir).unwrap()

        with open(os.path.join(out_dir, "warp.json")) as file:
            warp = json.load(file)
        with open(os.path.join(out_dir, "trace.csv")) as file:
            rows = list(csv.reader(file))
        assert warp["height"] == 64 and warp["mode"] == "tvm"
        assert rows[0] == ["iter", "shape_loss", "reg_loss", "total"]
        assert len(rows) == alignment.iters_run + 1
        assert os.path.isfile(os.path.join(out_dir, "warped.png"))
