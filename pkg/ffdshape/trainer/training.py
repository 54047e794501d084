import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Tuple, Union

import numpy as np

from ffdshape.errors import ShapeAlignmentError
from ffdshape.grids.metrics import iou
from ffdshape.losses.loss_report import LossReport
from ffdshape.objective.objective import evaluate_objective, warp_smoothness
from ffdshape.optim.adam import AdamState
from ffdshape.regressor.checkpoint_io import load_checkpoint, save_checkpoint
from ffdshape.regressor.inference import predict
from ffdshape.regressor.models.regressor_params import RegressorParams
from ffdshape.regressor.regressor import adam_step, backward, forward, init_params, sum_gradients
from ffdshape.tools import print_intro, print_message, print_report
from ffdshape.trainer.models.train_config import TrainConfig
from ffdshape.trainer.models.training_sample import LoadedDataset, TrainingSample
from ffdshape.trainer.models.training_summary import EpochRecord, TrainingSummary
from ffdshape.trainer.sampling import heldout_samples, sample_batch
from ffdshape.trainer.trainer_errors import TrainingError

INIT_STREAM = 104729
METRICS_COLUMNS = ["step", "epoch", "shape_loss", "reg_loss", "total", "heldout_iou"]
EPOCH_COLUMNS = ["epoch", "step", "mean_total", "heldout_iou", "identity_iou", "smoothness"]
MODEL_FILENAME = "model.ckpt"
DIAGNOSTIC_FILENAME = "diverged.ckpt"

SampleOutcome = Tuple[LossReport, Dict[str, np.ndarray]]


def steps_per_epoch(loaded: LoadedDataset, config: TrainConfig) -> int:
    return math.ceil(len(loaded.train) / config.batch_size)


def _format(value: Union[float, None]) -> str:
    return "" if value is None else repr(float(value))


class _CsvLog:
    def __init__(self, path: str, columns: List[str], append: bool):
        fresh = not (append and os.path.isfile(path))
        self.file = open(path, "w" if fresh else "a", newline="")
        self.writer = csv.writer(self.file)
        if fresh:
            self.writer.writerow(columns)

    def write(self, row: list) -> None:
        self.writer.writerow(row)
        self.file.flush()

    def close(self) -> None:
        self.file.close()


def sample_gradients(
    params: RegressorParams, sample: TrainingSample, config: TrainConfig
) -> SampleOutcome:
    """The network sees the partial target; the loss is taken against the full target."""
    output, cache = forward(params, sample.source, sample.partial_target)
    evaluation = evaluate_objective(
        sample.source,
        sample.full_target,
        output.raw,
        config.reg_weight,
        config.mode,
        theta=output.theta,
        normalize=config.normalize_losses,
    )
    return evaluation.report, backward(params, cache, evaluation.grad_raw, evaluation.grad_theta)


def evaluate_heldout(
    params: RegressorParams, config: TrainConfig, samples: List[TrainingSample]
) -> Tuple[Union[float, None], Union[float, None], Union[float, None]]:
    """Mean (warped IOU, identity IOU, smoothness) over held-out pairs, all against full targets."""
    if not samples:
        return None, None, None
    warped, identity, smoothness = [], [], []
    for sample in samples:
        output, result = predict(params, config.mode, sample.source, sample.partial_target)
        warped.append(iou(result.estimated, sample.full_target))
        identity.append(iou(sample.source, sample.full_target))
        smoothness.append(warp_smoothness(output.raw, config.mode))
    return float(np.mean(warped)), float(np.mean(identity)), float(np.mean(smoothness))


def _initial_state(
    config: TrainConfig, resume_from: Union[str, None]
) -> Tuple[RegressorParams, AdamState, int]:
    if resume_from is None:
        rng = np.random.default_rng([config.seed, INIT_STREAM])
        params = init_params(
            rng, config.grid_m, config.grid_n, config.resolution, config.learn_rotation
        )
        return params, AdamState(), 0

    checkpoint = load_checkpoint(resume_from)
    architecture = checkpoint.params.architecture
    expected = (config.resolution, config.grid_m, config.grid_n, config.learn_rotation)
    found = (architecture.resolution, architecture.m, architecture.n, architecture.learn_rotation)
    if found != expected:
        raise TrainingError.invalid(
            "train",
            "checkpoint architecture does not match the configuration",
            checkpoint=list(found),
            config=list(expected),
        )
    return checkpoint.params, checkpoint.adam_state or AdamState(), checkpoint.step


def _abort(
    out_dir: str,
    params: RegressorParams,
    state: AdamState,
    step: int,
    config: TrainConfig,
    total: float,
) -> TrainingError:
    save_checkpoint(
        os.path.join(out_dir, DIAGNOSTIC_FILENAME),
        params,
        step,
        config.mode,
        adam_state=state,
        config=config.model_dump(mode="json"),
    )
    return TrainingError.diverged("train", step, total)


def _all_finite(grads: Dict[str, np.ndarray]) -> bool:
    return all(bool(np.all(np.isfinite(value))) for value in grads.values())


def train(
    loaded: LoadedDataset,
    config: TrainConfig,
    out_dir: str,
    resume_from: Union[str, None] = None,
    verbose: bool = False,
) -> TrainingSummary:
    """
    Self-supervised training: every step samples a batch, regresses warps from
    (source, partial target), scores them against the full targets, sums per-sample
    gradients in sample order and applies one ADAM update.

    Parameters
    ----------
    loaded
        Decoded train and test silhouettes
    config
        Training hyper-parameters
    out_dir
        Receives metrics.csv, epochs.csv, periodic checkpoints and model.ckpt
    resume_from
        Checkpoint whose parameters, ADAM moments and step counter are continued

    Returns
    -------
        A TrainingSummary. Raises TrainingError (code 3) after writing diverged.ckpt
        when the loss or the gradients stop being finite.
    """
    print_intro("train", verbose=verbose)
    if len(loaded.train) < 2:
        raise TrainingError.invalid(
            "train", "training needs at least two train items", found=len(loaded.train)
        )
    params, state, start_step = _initial_state(config, resume_from)
    per_epoch = steps_per_epoch(loaded, config)
    total_steps = config.epochs * per_epoch
    echo = config.model_dump(mode="json")

    os.makedirs(os.path.join(out_dir, "checkpoints"), exist_ok=True)
    metrics = _CsvLog(os.path.join(out_dir, "metrics.csv"), METRICS_COLUMNS, start_step > 0)
    epochs_log = _CsvLog(os.path.join(out_dir, "epochs.csv"), EPOCH_COLUMNS, start_step > 0)
    heldout = heldout_samples(loaded, config)

    epochs: List[EpochRecord] = []
    epoch_totals: List[float] = []
    report = None
    try:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            for step in range(start_step, total_steps):
                epoch = step // per_epoch
                batch = sample_batch(loaded, config, np.random.default_rng([config.seed, step]))
                try:
                    outcomes = list(
                        pool.map(lambda sample: sample_gradients(params, sample, config), batch)
                    )
                except (ValueError, ShapeAlignmentError):
                    raise _abort(out_dir, params, state, step, config, math.nan)

                report = LossReport.compose(
                    sum(outcome[0].shape_loss for outcome in outcomes),
                    sum(outcome[0].reg_loss for outcome in outcomes),
                    config.reg_weight,
                    step,
                )
                grads = sum_gradients([outcome[1] for outcome in outcomes])
                if not report.is_finite() or not _all_finite(grads):
                    raise _abort(out_dir, params, state, step, config, report.total)
                try:
                    params, state = adam_step(params, grads, state, config.learning_rate)
                except ShapeAlignmentError:
                    raise _abort(out_dir, params, state, step, config, report.total)

                print_report(step, report, verbose=verbose, every=per_epoch)
                epoch_totals.append(report.total)
                heldout_iou = None
                if (step + 1) % per_epoch == 0:
                    heldout_iou, identity_iou, smoothness = evaluate_heldout(
                        params, config, heldout
                    )
                    record = EpochRecord(
                        epoch=epoch,
                        step=step + 1,
                        mean_total=float(np.mean(epoch_totals)),
                        heldout_iou=heldout_iou,
                        identity_iou=identity_iou,
                        smoothness=smoothness,
                    )
                    epochs.append(record)
                    epoch_totals = []
                    epochs_log.write(
                        [
                            record.epoch,
                            record.step,
                            _format(record.mean_total),
                            _format(heldout_iou),
                            _format(identity_iou),
                            _format(smoothness),
                        ]
                    )
                    print_message(
                        f"epoch {epoch} | held-out iou {_format(heldout_iou)} "
                        f"| identity {_format(identity_iou)}",
                        verbose=verbose,
                    )
                metrics.write(
                    [
                        step,
                        epoch,
                        _format(report.shape_loss),
                        _format(report.reg_loss),
                        _format(report.total),
                        _format(heldout_iou),
                    ]
                )
                if config.checkpoint_every and (step + 1) % config.checkpoint_every == 0:
                    save_checkpoint(
                        os.path.join(out_dir, "checkpoints", f"step_{step + 1:08d}.ckpt"),
                        params,
                        step + 1,
                        config.mode,
                        adam_state=state,
                        config=echo,
                    )
    finally:
        metrics.close()
        epochs_log.close()

    final_step = max(start_step, total_steps)
    checkpoint_path = os.path.join(out_dir, MODEL_FILENAME)
    save_checkpoint(checkpoint_path, params, final_step, config.mode, adam_state=state, config=echo)
    return TrainingSummary(
        checkpoint_path=checkpoint_path,
        start_step=start_step,
        final_step=final_step,
        last_report=report,
        epochs=epochs,
    )
