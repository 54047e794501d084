import argparse
import json
import os

import numpy as np
import pytest

from ffdshape.cli import main, parse_range
from ffdshape.evaluator import save_image
from ffdshape.grids import Silhouette, save_silhouette

SMALL_MODEL = ["--resolution", "16", "--grid-m", "2", "--grid-n", "2"]


def write_square(path: str, size: int, top: int, left: int, side: int) -> str:
    values = np.zeros((size, size))
    values[top : top + side, left : left + side] = 1.0
    save_silhouette(Silhouette(values=values), path)
    return path


def listing(directory: str) -> set:
    return set(os.listdir(directory))


@pytest.mark.unit
class TestParseRange:
    @pytest.mark.parametrize("text,expected", [("0.2..0.6", (0.2, 0.6)), ("1,1", (1.0, 1.0))])
    def should_parse_ordered_pairs(self, text, expected):
        assert parse_range(text) == expected

    @pytest.mark.parametrize("text", ["0.6..0.2", "abc", "1..2..3"])
    def should_reject_malformed_ranges(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(text)


@pytest.mark.unit
class TestCli:
    def should_write_a_synthetic_dataset(self, tmp_path):
        out = str(tmp_path / "synth")

        code = main(
            ["synth", "--out", out, "--kind", "cross", "--count", "4", "--resolution", "16"]
        )

        assert code == 0
        assert listing(out) == {f"cross_000{i}.png" for i in range(4)} | {"config.json"}
        with open(os.path.join(out, "config.json")) as file:
            assert json.load(file)["command"] == "synth"

    def should_align_a_pair(self, tmp_path):
        source = write_square(str(tmp_path / "source.png"), 32, 10, 10, 10)
        target = write_square(str(tmp_path / "target.png"), 32, 10, 13, 10)
        out = str(tmp_path / "align")

        code = main(
            ["align", "--out", out, "--source", source, "--target", target]
            + ["--iters", "20", "--grid-m", "4", "--grid-n", "4", "--mode", "tv"]
        )

        assert code == 0
        assert {"warp.json", "warped.png", "trace.csv", "config.json"} <= listing(out)
        with open(os.path.join(out, "warp.json")) as file:
            assert json.load(file)["mode"] == "tv"

    def should_report_a_missing_input(self, tmp_path):
        target = write_square(str(tmp_path / "target.png"), 32, 10, 13, 10)
        out = str(tmp_path / "align")
        missing = str(tmp_path / "nope.png")

        code = main(["align", "--out", out, "--source", missing, "--target", target])

        assert code == 2
        with open(os.path.join(out, "error.json")) as file:
            error = json.load(file)
        assert error["code"] == 2 and error["operation"] == "load_silhouette"

    def should_reject_an_unknown_mode(self, tmp_path):
        code = main(
            ["align", "--out", str(tmp_path), "--source", "a", "--target", "b", "--mode", "l2"]
        )

        assert code == 2

    def should_require_an_output_directory(self):
        assert main(["synth"]) == 2

    def should_run_a_baseline_ransac(self, tmp_path):
        source = write_square(str(tmp_path / "source.png"), 32, 8, 8, 10)
        target = write_square(str(tmp_path / "target.png"), 32, 11, 12, 10)
        out = str(tmp_path / "ransac")

        code = main(
            ["ransac", "--out", out, "--source", source, "--target", target]
            + ["--iterations", "50"]
        )

        assert code == 0
        with open(os.path.join(out, "affine.json")) as file:
            assert 0.0 <= json.load(file)["score"] <= 1.0

    def should_train_infer_evaluate_and_transfer(self, tmp_path):
        data = str(tmp_path / "data")
        run = str(tmp_path / "run")
        assert main(["synth", "--out", data, "--count", "10"] + SMALL_MODEL[:2]) == 0

        code = main(
            ["train", "--out", run, "--data", data, "--epochs", "1", "--batch-size", "4"]
            + ["--heldout-pairs", "2", "--checkpoint-every", "0"]
            + SMALL_MODEL
        )
        assert code == 0
        expected = {"manifest.json", "metrics.csv", "epochs.csv", "model.ckpt", "summary.json"}
        assert expected <= listing(run)

        checkpoint = os.path.join(run, "model.ckpt")
        inferred = str(tmp_path / "infer")
        code = main(
            ["infer", "--out", inferred, "--checkpoint", checkpoint]
            + ["--source", os.path.join(data, "ellipse_0000.png")]
            + ["--target", os.path.join(data, "ellipse_0001.png")]
        )
        assert code == 0
        assert {"warp.json", "warp.bin", "warped.png"} <= listing(inferred)

        evaluated = str(tmp_path / "eval")
        code = main(
            ["eval", "--out", evaluated, "--checkpoint", checkpoint]
            + ["--manifest", os.path.join(run, "manifest.json")]
            + ["--protocol", "none", "--strips", "1"]
        )
        assert code == 0
        with open(os.path.join(evaluated, "summary.json")) as file:
            # 10 items hold out 2, which form 2 ordered pairs
            assert json.load(file)["count"] == 2
        assert len(os.listdir(os.path.join(evaluated, "strips"))) == 1

        texture = str(tmp_path / "texture.png")
        save_image(np.random.default_rng(0).integers(0, 256, (16, 16, 3), dtype=np.uint8), texture)
        transferred = str(tmp_path / "transfer")
        code = main(
            ["transfer", "--out", transferred, "--image", texture]
            + ["--warp", os.path.join(inferred, "warp.json")]
        )
        assert code == 0
        assert "transferred.png" in listing(transferred)

    def should_fail_on_an_unreadable_manifest(self, tmp_path, given_fresh_checkpoint_path):
        out = str(tmp_path / "eval")

        code = main(
            ["eval", "--out", out, "--checkpoint", given_fresh_checkpoint_path]
            + ["--manifest", str(tmp_path / "missing.json")]
        )

        assert code == 2
        assert os.path.isfile(os.path.join(out, "error.json"))
