import csv
import os

import numpy as np
import pytest

from ffdshape.config import Config
from ffdshape.parametrization import RegularizationMode
from ffdshape.regressor import load_checkpoint
from ffdshape.trainer import (
    AblationRecord,
    Dataset,
    DatasetError,
    LoadedDataset,
    TrainConfig,
    Trainer,
    TrainingError,
    TrainingSummary,
    augment,
    held_out_size,
    heldout_samples,
    sample_batch,
    split_dataset,
    write_synthetic_dataset,
)


def small_config(**overrides) -> TrainConfig:
    values = dict(
        resolution=16,
        grid_m=2,
        grid_n=2,
        epochs=2,
        batch_size=4,
        checkpoint_every=2,
        heldout_pairs=2,
        seed=0,
    )
    values.update(overrides)
    return TrainConfig(**values)


def loaded_from(shapes, test_count: int = 2) -> LoadedDataset:
    names = [f"shape_{i:02d}.png" for i in range(len(shapes))]
    dataset = Dataset(
        root="/unused",
        resolution=shapes[0].height,
        seed=0,
        train_items=names[test_count:],
        test_items=names[:test_count],
    )
    return LoadedDataset(dataset=dataset, train=shapes[test_count:], test=shapes[:test_count])


def read(path: str) -> bytes:
    with open(path, "rb") as file:
        return file.read()


@pytest.mark.unit
class TestSplit:
    def should_hold_out_thirty_items_from_a_large_pool(self, tmp_path):
        directory = str(tmp_path / "pool")
        write_synthetic_dataset(directory, "ellipse", 330, 8, seed=1)

        dataset = split_dataset(directory, seed=4, resolution=8)

        assert len(dataset.train_items) == 300
        assert len(dataset.test_items) == 30
        assert not set(dataset.train_items) & set(dataset.test_items)
        assert dataset.warnings == []

    def should_fall_back_to_a_fifth_on_a_small_pool(self, tmp_path):
        directory = str(tmp_path / "pool")
        write_synthetic_dataset(directory, "cross", 10, 8, seed=1)

        dataset = split_dataset(directory, seed=4, resolution=8)

        assert (len(dataset.train_items), len(dataset.test_items)) == (8, 2)
        assert len(dataset.warnings) == 1

    def should_write_the_same_manifest_for_the_same_seed(self, tmp_path, given_synthetic_directory):
        first, second = str(tmp_path / "first.json"), str(tmp_path / "second.json")

        split_dataset(given_synthetic_directory, 7, 16, manifest_path=first)
        split_dataset(given_synthetic_directory, 7, 16, manifest_path=second)

        assert read(first) == read(second)
        expected = split_dataset(given_synthetic_directory, 7, 16).test_items
        assert Dataset.load(first).test_items == expected

    def should_write_the_manifest_next_to_the_images_by_default(self, given_synthetic_directory):
        dataset = split_dataset(given_synthetic_directory, 7, 16)

        manifest = Dataset.load(os.path.join(given_synthetic_directory, "manifest.json"))
        assert manifest.test_items == dataset.test_items
        assert split_dataset(given_synthetic_directory, 7, 16).warnings == dataset.warnings

    def should_skip_undecodable_files(self, given_synthetic_directory):
        with open(os.path.join(given_synthetic_directory, "broken.png"), "wb") as file:
            file.write(b"not an image")

        dataset = split_dataset(given_synthetic_directory, 0, 16)

        assert "broken.png" not in dataset.train_items + dataset.test_items
        assert any("broken.png" in warning for warning in dataset.warnings)

    def should_fail_with_fewer_than_two_images(self, tmp_path):
        directory = str(tmp_path / "single")
        write_synthetic_dataset(directory, "ellipse", 1, 8, seed=0)

        with pytest.raises(DatasetError):
            split_dataset(directory, 0, 8)

    @pytest.mark.parametrize("count,expected", [(150, 30), (149, 30), (20, 4), (3, 1)])
    def should_size_the_held_out_split(self, count, expected):
        assert held_out_size(count)[0] == expected

    def should_reject_test_size_leaving_no_train_item(self):
        with pytest.raises(DatasetError):
            held_out_size(5, test_size=5)


@pytest.mark.unit
class TestSampling:
    def should_never_pair_an_item_with_itself(self, given_small_shapes):
        loaded = loaded_from(given_small_shapes)
        config = small_config(batch_size=64)

        batch = sample_batch(loaded, config, np.random.default_rng(0))

        assert len(batch) == 64
        assert all(sample.source_index != sample.target_index for sample in batch)

    def should_only_remove_pixels_when_masking(self, given_small_shapes):
        loaded = loaded_from(given_small_shapes)

        batch = sample_batch(loaded, small_config(batch_size=16), np.random.default_rng(1))

        for sample in batch:
            assert np.all(sample.partial_target.values <= sample.full_target.values)
            assert sample.mask is not None

    def should_keep_full_targets_without_masking(self, given_small_shapes):
        loaded = loaded_from(given_small_shapes)
        config = small_config(mask_range=(0.0, 0.0), scale_range=(1.0, 1.0))

        batch = sample_batch(loaded, config, np.random.default_rng(2))

        for sample in batch:
            assert sample.mask is None
            assert sample.full_target is loaded.train[sample.target_index]

    def should_be_reproducible_from_the_stream(self, given_small_shapes):
        loaded = loaded_from(given_small_shapes)
        config = small_config(batch_size=8)

        first = sample_batch(loaded, config, np.random.default_rng(3))
        second = sample_batch(loaded, config, np.random.default_rng(3))

        assert [(s.source_index, s.target_index, s.mask) for s in first] == [
            (s.source_index, s.target_index, s.mask) for s in second
        ]

    def should_leave_shapes_unchanged_without_augmentation(self, given_small_shapes):
        config = small_config(scale_range=(1.0, 1.0))
        shape = given_small_shapes[0]

        assert augment(shape, config, np.random.default_rng(0)) is shape

    def should_score_the_same_held_out_pairs_every_time(self, given_small_shapes):
        loaded = loaded_from(given_small_shapes, test_count=5)
        config = small_config(heldout_pairs=6)

        first, second = heldout_samples(loaded, config), heldout_samples(loaded, config)

        assert len(first) == 6
        assert [(s.source_index, s.target_index, s.mask) for s in first] == [
            (s.source_index, s.target_index, s.mask) for s in second
        ]


@pytest.mark.unit
class TestTraining:
    def setup_method(self):
        self.trainer = Trainer(config=small_config())

    def should_write_metrics_and_checkpoints(self, tmp_path, given_synthetic_directory):
        dataset = self.trainer.split(given_synthetic_directory).unwrap()
        out_dir = str(tmp_path / "run")

        result = self.trainer.train(dataset, out_dir)

        result.assert_success(value_is_instance_of=TrainingSummary)
        summary = result.value
        # 10 train items in batches of 4
        assert summary.final_step == 2 * 3
        assert len(summary.epochs) == 2
        assert sorted(os.listdir(os.path.join(out_dir, "checkpoints"))) == [
            "step_00000002.ckpt",
            "step_00000004.ckpt",
            "step_00000006.ckpt",
        ]
        with open(os.path.join(out_dir, "metrics.csv")) as file:
            rows = list(csv.reader(file))
        assert rows[0] == ["step", "epoch", "shape_loss", "reg_loss", "total", "heldout_iou"]
        assert len(rows) == 7
        assert load_checkpoint(summary.checkpoint_path).step == 6

    def should_produce_identical_metrics_on_rerun(self, tmp_path, given_synthetic_directory):
        dataset = self.trainer.split(given_synthetic_directory).unwrap()
        first, second = str(tmp_path / "first"), str(tmp_path / "second")

        self.trainer.train(dataset, first).unwrap()
        self.trainer.train(dataset, second).unwrap()

        assert read(os.path.join(first, "metrics.csv")) == read(os.path.join(second, "metrics.csv"))
        assert read(os.path.join(first, "model.ckpt")) == read(os.path.join(second, "model.ckpt"))

    def should_not_depend_on_the_number_of_threads(self, tmp_path, given_synthetic_directory):
        dataset = self.trainer.split(given_synthetic_directory).unwrap()
        threaded = Trainer(config=small_config(threads=3))
        first, second = str(tmp_path / "single"), str(tmp_path / "threaded")

        self.trainer.train(dataset, first).unwrap()
        threaded.train(dataset, second).unwrap()

        assert read(os.path.join(first, "metrics.csv")) == read(os.path.join(second, "metrics.csv"))

    def should_continue_the_step_count_on_resume(self, tmp_path, given_synthetic_directory):
        dataset = self.trainer.split(given_synthetic_directory).unwrap()
        out_dir = str(tmp_path / "run")
        Trainer(config=small_config(epochs=1)).train(dataset, out_dir).unwrap()

        summary = self.trainer.train(
            dataset, out_dir, resume_from=os.path.join(out_dir, "model.ckpt")
        ).unwrap()

        assert (summary.start_step, summary.final_step) == (3, 6)
        with open(os.path.join(out_dir, "metrics.csv")) as file:
            steps = [row[0] for row in list(csv.reader(file))[1:]]
        assert steps == ["0", "1", "2", "3", "4", "5"]

    def should_fail_on_mismatched_resume_checkpoint(
        self, tmp_path, given_synthetic_directory, given_fresh_checkpoint_path
    ):
        dataset = self.trainer.split(given_synthetic_directory).unwrap()
        trainer = Trainer(config=small_config(grid_m=4, grid_n=4))

        out_dir = str(tmp_path / "run")

        result = trainer.train(dataset, out_dir, resume_from=given_fresh_checkpoint_path)

        result.assert_failure(value_is_instance_of=TrainingError)
        assert result.value.code == 2

    def should_fail_on_missing_directory(self, tmp_path):
        result = self.trainer.split(str(tmp_path / "missing"))

        result.assert_failure(value_is_instance_of=DatasetError)

    def should_train_one_model_per_mode(self, tmp_path, given_synthetic_directory):
        trainer = Trainer(config=small_config(epochs=1, checkpoint_every=0))
        dataset = trainer.split(given_synthetic_directory).unwrap()

        modes = [RegularizationMode.NONE, RegularizationMode.TV]

        records = trainer.ablation(dataset, str(tmp_path / "ablation"), modes=modes).unwrap()

        assert sorted(records) == ["none", "tv"]
        assert all(isinstance(record, AblationRecord) for record in records.values())
        assert os.path.isfile(os.path.join(str(tmp_path), "ablation", "tv", "model.ckpt"))

    @pytest.mark.parametrize(
        "trace,expected",
        [([1.5, 3.0, 2.25], 1.5), ([], None), ([None, 2.0], None), ([0.0, 1.0], None)],
    )
    def should_report_smoothness_growth_over_the_first_epoch(self, trace, expected):
        record = AblationRecord(
            mode=RegularizationMode.TV_MONOTONIC,
            checkpoint_path="model.ckpt",
            heldout_iou=None,
            identity_iou=None,
            smoothness=None,
            smoothness_trace=trace,
        )

        assert record.smoothness_growth == expected

    def should_build_from_config(self):
        trainer = Trainer.from_config(Config(resolution=32, grid_m=4, grid_n=4, seed=9))

        assert (trainer.config.resolution, trainer.config.grid_m, trainer.config.seed) == (32, 4, 9)
