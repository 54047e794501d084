import hashlib

import numpy as np
import pytest

from ffdshape.evaluator import infer
from ffdshape.grids import Silhouette
from ffdshape.optim import AdamState
from ffdshape.parametrization import RegularizationMode
from ffdshape.regressor import (
    PARAMETER_ORDER,
    CheckpointError,
    init_params,
    load_checkpoint,
    save_checkpoint,
)


def digest(path: str) -> str:
    with open(path, "rb") as file:
        return hashlib.sha256(file.read()).hexdigest()


@pytest.mark.unit
class TestCheckpoint:
    def setup_method(self):
        self.rng = np.random.default_rng(0)

    def should_reload_saved_parameters(self, tmp_path):
        params = init_params(self.rng, 2, 2, 16, learn_rotation=True)
        path = str(tmp_path / "model.ckpt")

        header = save_checkpoint(path, params, 12, RegularizationMode.TV)
        checkpoint = load_checkpoint(path)

        assert checkpoint.step == 12
        assert checkpoint.mode == RegularizationMode.TV
        assert checkpoint.params.architecture == params.architecture
        assert header.dtype == "<f4"
        for name in PARAMETER_ORDER:
            expected = np.asarray(params.as_arrays()[name], dtype=np.float32)
            assert np.array_equal(checkpoint.params.as_arrays()[name], expected), name

    def should_write_identical_bytes_after_a_round_trip(self, tmp_path):
        params = init_params(self.rng, 4, 4, 32)
        first, second = str(tmp_path / "first.ckpt"), str(tmp_path / "second.ckpt")

        save_checkpoint(first, params, 3, RegularizationMode.TV_MONOTONIC, config={"seed": 0})
        loaded = load_checkpoint(first)
        save_checkpoint(second, loaded.params, loaded.step, loaded.mode, config={"seed": 0})

        assert digest(first) == digest(second)

    def should_keep_optimizer_moments(self, tmp_path):
        params = init_params(self.rng, 2, 2, 16)
        moments = {name: np.full_like(value, 0.25) for name, value in params.as_arrays().items()}
        state = AdamState(step=7, first_moment=moments, second_moment=moments)
        path = str(tmp_path / "resume.ckpt")

        save_checkpoint(path, params, 7, RegularizationMode.TV_MONOTONIC, adam_state=state)
        checkpoint = load_checkpoint(path)

        assert checkpoint.adam_state.step == 7
        assert np.all(checkpoint.adam_state.second_moment["fc2_weight"] == 0.25)

    def should_leave_the_file_untouched_by_inference(self, given_fresh_checkpoint_path):
        before = digest(given_fresh_checkpoint_path)
        checkpoint = load_checkpoint(given_fresh_checkpoint_path)
        shape = Silhouette(values=np.pad(np.ones((8, 8)), 4))

        infer(checkpoint, shape, shape)

        assert digest(given_fresh_checkpoint_path) == before

    def should_not_leave_temporary_files(self, tmp_path):
        save_checkpoint(
            str(tmp_path / "model.ckpt"),
            init_params(self.rng, 2, 2, 16),
            0,
            RegularizationMode.NONE,
        )

        assert sorted(p.name for p in tmp_path.iterdir()) == ["model.ckpt"]

    def should_fail_on_foreign_file(self, tmp_path):
        path = tmp_path / "foreign.ckpt"
        path.write_bytes(b"NOTACKPT" + b"\x00" * 32)

        with pytest.raises(CheckpointError) as error:
            load_checkpoint(str(path))
        assert error.value.code == 2

    def should_fail_on_truncated_blob(self, tmp_path):
        path = tmp_path / "model.ckpt"
        save_checkpoint(str(path), init_params(self.rng, 2, 2, 16), 0, RegularizationMode.TV)
        path.write_bytes(path.read_bytes()[:-4])

        with pytest.raises(CheckpointError):
            load_checkpoint(str(path))

    def should_fail_on_missing_file(self, tmp_path):
        with pytest.raises(CheckpointError):
            load_checkpoint(str(tmp_path / "missing.ckpt"))
