import csv
import json
import os

import numpy as np
import pytest

from ffdshape.config import Config
from ffdshape.evaluator import (
    AgnosticismScore,
    EvalReport,
    EvaluationError,
    Evaluator,
    GridSweepReport,
    InferenceResult,
    MaskProtocol,
    centered_occlusion,
    eval_testset,
    infer,
    partial_agnosticism_score,
    stress_test,
    write_eval_report,
)
from ffdshape.grids import RectMask, Silhouette
from ffdshape.pair_optimizer import OptimizeConfig
from ffdshape.regressor import CheckpointError
from ffdshape.trainer import Dataset, LoadedDataset


def disc(size: int, radius: float) -> Silhouette:
    rows, cols = np.mgrid[0:size, 0:size].astype(np.float64)
    center = (size - 1) / 2.0
    return Silhouette(values=((rows - center) ** 2 + (cols - center) ** 2 <= radius**2) * 1.0)


def loaded_test_set(shapes) -> LoadedDataset:
    names = [f"item_{i:02d}.png" for i in range(len(shapes))]
    dataset = Dataset(
        root="/unused", resolution=16, seed=0, train_items=["train.png"], test_items=names
    )
    return LoadedDataset(dataset=dataset, train=[], test=list(shapes))


@pytest.mark.unit
class TestInfer:
    def should_warp_source_onto_itself_with_fresh_checkpoint(
        self, given_fresh_checkpoint, given_small_shapes
    ):
        source, target = given_small_shapes[0], given_small_shapes[1]

        result = infer(given_fresh_checkpoint, source, target)

        assert np.max(np.abs(result.warped.values - source.values)) < 1e-6
        assert result.control.is_axially_monotonic()

    def should_be_bitwise_repeatable(self, given_fresh_checkpoint, given_small_shapes):
        source, target = given_small_shapes[2], given_small_shapes[3]

        first = infer(given_fresh_checkpoint, source, target)
        second = infer(given_fresh_checkpoint, source, target)

        assert np.array_equal(first.warped.values, second.warped.values)
        assert np.array_equal(first.control.x, second.control.x)


@pytest.mark.unit
class TestEvalTestset:
    def should_score_every_ordered_pair(self, given_fresh_checkpoint, given_small_shapes):
        report = eval_testset(
            given_fresh_checkpoint, given_small_shapes, protocol=MaskProtocol.NONE
        )

        assert report.count == 30 * 29
        assert [r.pair_id for r in report.records] == sorted(r.pair_id for r in report.records)
        assert all(r.iou_partial_input == r.iou_full_input for r in report.records)
        assert all(r.mask is None and r.warp_consistency == 0.0 for r in report.records)

    def should_aggregate_the_record_means(self, given_fresh_checkpoint, given_small_shapes):
        report = eval_testset(
            given_fresh_checkpoint, given_small_shapes[:8], protocol=MaskProtocol.NONE
        )

        expected = sum(r.iou_partial_input for r in report.records) / len(report.records)
        assert report.mean_iou_partial_input == pytest.approx(expected, abs=1e-12)
        # an untrained regressor returns the identity warp
        assert report.mean_iou_partial_input == pytest.approx(report.mean_iou_identity, abs=1e-12)

    def should_mask_targets_reproducibly_whatever_the_threads(
        self, given_fresh_checkpoint, given_small_shapes
    ):
        shapes = given_small_shapes[:6]

        single = eval_testset(given_fresh_checkpoint, shapes, seed=3, threads=1)
        threaded = eval_testset(given_fresh_checkpoint, shapes, seed=3, threads=4)

        assert single.records == threaded.records
        assert all(r.mask is not None for r in single.records)

    def should_write_strips_of_the_first_pairs(
        self, tmp_path, given_fresh_checkpoint, given_small_shapes
    ):
        strips_dir = str(tmp_path / "strips")
        shapes = given_small_shapes[:4]

        eval_testset(given_fresh_checkpoint, shapes, strips_dir=strips_dir, strips=3)

        assert len(os.listdir(strips_dir)) == 3

    def should_fail_with_a_single_item(self, given_fresh_checkpoint, given_small_shapes):
        with pytest.raises(EvaluationError):
            eval_testset(given_fresh_checkpoint, given_small_shapes[:1])

    def should_write_report_files(self, tmp_path, given_fresh_checkpoint, given_small_shapes):
        report = eval_testset(
            given_fresh_checkpoint, given_small_shapes[:3], names=["a", "b", "c"]
        )
        out_dir = str(tmp_path / "eval")

        write_eval_report(report, out_dir)

        with open(os.path.join(out_dir, "report.csv")) as file:
            rows = list(csv.reader(file))
        with open(os.path.join(out_dir, "summary.json")) as file:
            summary = json.load(file)
        assert len(rows) == 7
        assert rows[1][:3] == ["0000-0001", "a", "b"]
        assert summary["count"] == 6
        assert summary["protocol"] == "random"


@pytest.mark.unit
class TestExperiments:
    def should_not_depend_on_occlusion_before_training(self, given_fresh_checkpoint):
        source, target = disc(16, 5.0), disc(16, 6.0)
        masks = [RectMask(center_row=8, center_col=8, mask_height=4, mask_width=4)] * 2 + [
            Silhouette(values=np.pad(np.ones((8, 16)), ((0, 8), (0, 0))))
        ]

        score = partial_agnosticism_score(given_fresh_checkpoint, source, target, masks)

        assert score.variants == 4
        assert score.mean_warp_difference == 0.0
        assert score.mean_pairwise_iou == 1.0

    def should_need_two_masks(self, given_fresh_checkpoint):
        mask = RectMask(center_row=8, center_col=8, mask_height=4, mask_width=4)

        with pytest.raises(EvaluationError):
            partial_agnosticism_score(given_fresh_checkpoint, disc(16, 5.0), disc(16, 5.0), [mask])

    @pytest.mark.parametrize("fraction", [0.25, 0.5])
    def should_remove_the_requested_fraction(self, fraction):
        target = disc(64, 20.0)

        mask, achieved = centered_occlusion(target, fraction)

        assert mask is not None
        assert abs(achieved - fraction) <= 0.05

    def should_not_occlude_for_zero_fraction(self):
        assert centered_occlusion(disc(64, 20.0), 0.0) == (None, 0.0)

    def should_record_one_inference_per_fraction(self, given_fresh_checkpoint):
        fractions = [0.0, 0.25, 0.5]

        records = stress_test(given_fresh_checkpoint, disc(16, 5.0), disc(16, 6.0), fractions)

        assert [r.requested_fraction for r in records] == [0.0, 0.25, 0.5]
        assert records[0].mask is None
        assert all(r.iou == pytest.approx(r.iou_identity) for r in records)

    def should_reject_unordered_fractions(self, given_fresh_checkpoint):
        with pytest.raises(EvaluationError):
            stress_test(given_fresh_checkpoint, disc(16, 5.0), disc(16, 6.0), [0.5, 0.25])


@pytest.mark.unit
class TestEvaluator:
    def setup_method(self):
        self.evaluator = Evaluator.from_config(Config(seed=2))

    def should_infer_from_a_checkpoint_path(self, given_fresh_checkpoint_path, given_small_shapes):
        source, target = given_small_shapes[:2]

        result = self.evaluator.infer(given_fresh_checkpoint_path, source, target)

        result.assert_success(value_is_instance_of=InferenceResult)

    def should_return_failure_on_missing_checkpoint(self, tmp_path, given_small_shapes):
        source, target = given_small_shapes[:2]

        result = self.evaluator.infer(str(tmp_path / "missing.ckpt"), source, target)

        result.assert_failure(value_is_instance_of=CheckpointError)

    def should_return_failure_on_resolution_mismatch(self, given_fresh_checkpoint):
        result = self.evaluator.infer(given_fresh_checkpoint, disc(32, 8.0), disc(32, 8.0))

        assert result.is_failure

    def should_evaluate_a_loaded_dataset(
        self, tmp_path, given_fresh_checkpoint, given_small_shapes
    ):
        out_dir = str(tmp_path / "eval")

        result = self.evaluator.eval_testset(
            given_fresh_checkpoint, loaded_test_set(given_small_shapes[:4]), out_dir=out_dir
        )

        result.assert_success(value_is_instance_of=EvalReport)
        assert result.value.records[0].source_item == "item_00.png"
        assert os.path.isfile(os.path.join(out_dir, "summary.json"))

    def should_score_partial_agnosticism_with_random_masks(self, given_fresh_checkpoint):
        target = disc(16, 6.0)
        masks = self.evaluator.random_masks(target, 3).unwrap()

        result = self.evaluator.partial_agnosticism(
            given_fresh_checkpoint, disc(16, 5.0), target, masks
        )

        result.assert_success(value_is_instance_of=AgnosticismScore)

    def should_sweep_grid_resolutions(self, given_centered_square, given_translated_square):
        result = self.evaluator.grid_sweep(
            given_centered_square,
            given_translated_square,
            OptimizeConfig(max_iters=10),
            grids=[(2, 2), (4, 4)],
        )

        result.assert_success(value_is_instance_of=GridSweepReport)
        assert [(r.m, r.n) for r in result.value.records] == [(2, 2), (4, 4)]
