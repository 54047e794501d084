import csv
import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple, Union

import numpy as np

from ffdshape.evaluator.enums.mask_protocol import MaskProtocol
from ffdshape.evaluator.evaluator_errors import EvaluationError
from ffdshape.evaluator.models.eval_report import RECORD_COLUMNS, EvalReport, PairRecord
from ffdshape.evaluator.models.experiment_records import (
    AgnosticismScore,
    InferenceResult,
    StressRecord,
)
from ffdshape.grids.masking import apply_mask, apply_mask_image, random_mask
from ffdshape.grids.metrics import foreground_bbox, foreground_centroid, iou
from ffdshape.grids.models.rect_mask import RectMask
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.grids.silhouette_io import save_strip
from ffdshape.objective.objective import warp_smoothness
from ffdshape.regressor.inference import predict
from ffdshape.regressor.models.checkpoint import Checkpoint

DEFAULT_STRIPS = 10


def infer(
    checkpoint: Checkpoint, source: Silhouette, partial_target: Silhouette
) -> InferenceResult:
    """Frozen forward pass of a trained regressor followed by the warp of the source."""
    output, result = predict(checkpoint.params, checkpoint.mode, source, partial_target)
    return InferenceResult(
        control=result.control,
        warped=result.estimated,
        lookup=result.lookup,
        raw=output.raw,
        theta=output.theta,
    )


def _occlude(
    target: Silhouette,
    protocol: MaskProtocol,
    mask_range: Tuple[float, float],
    rng: np.random.Generator,
) -> Tuple[Silhouette, Union[RectMask, None]]:
    if protocol == MaskProtocol.NONE or target.foreground_count() == 0:
        return target, None
    mask = random_mask(target, mask_range, rng)
    return apply_mask(target, mask), mask


def _evaluate_pair(
    checkpoint: Checkpoint,
    test: Sequence[Silhouette],
    names: Sequence[str],
    pair: Tuple[int, int],
    protocol: MaskProtocol,
    mask_range: Tuple[float, float],
    seed: int,
) -> Tuple[PairRecord, Silhouette, Silhouette]:
    source_index, target_index = pair
    source, target = test[source_index], test[target_index]
    partial, mask = _occlude(
        target, protocol, mask_range, np.random.default_rng([seed, source_index, target_index])
    )
    from_partial = infer(checkpoint, source, partial)
    from_full = from_partial if mask is None else infer(checkpoint, source, target)
    record = PairRecord(
        pair_id=f"{source_index:04d}-{target_index:04d}",
        source_item=names[source_index],
        target_item=names[target_index],
        mask=mask,
        iou_partial_input=iou(from_partial.warped, target),
        iou_full_input=iou(from_full.warped, target),
        iou_identity=iou(source, target),
        smoothness=warp_smoothness(from_partial.raw, checkpoint.mode),
        warp_consistency=from_partial.control.max_abs_difference(from_full.control),
    )
    return record, partial, from_partial.warped


def eval_testset(
    checkpoint: Checkpoint,
    test: Sequence[Silhouette],
    names: Union[Sequence[str], None] = None,
    protocol: MaskProtocol = MaskProtocol.RANDOM,
    mask_range: Tuple[float, float] = (0.2, 0.6),
    seed: int = 0,
    strips_dir: Union[str, None] = None,
    strips: int = DEFAULT_STRIPS,
    threads: int = 1,
) -> EvalReport:
    """
    Scores every ordered pair of distinct test items (n items give n * (n - 1) records).

    Parameters
    ----------
    checkpoint
        Trained regressor
    test
        Held-out silhouettes at the checkpoint resolution
    names
        Item names used in the records, defaults to the indices
    protocol
        How partial targets are produced
    mask_range
        Mask side range of the random protocol
    seed
        Each pair draws its mask from a stream seeded by (seed, source index, target index)
    strips_dir
        When set, writes source | partial | warped | full PNG strips of the first pairs

    Returns
    -------
        The EvalReport sorted by pair id. Raises EvaluationError with fewer than two items.
    """
    if len(test) < 2:
        raise EvaluationError.invalid(
            "eval_testset", "test set needs at least two items", found=len(test)
        )
    names = list(names) if names is not None else [str(i) for i in range(len(test))]
    pairs = list(itertools.permutations(range(len(test)), 2))

    protocol = MaskProtocol(protocol)

    def run(pair: Tuple[int, int]) -> Tuple[PairRecord, Silhouette, Silhouette]:
        return _evaluate_pair(checkpoint, test, names, pair, protocol, mask_range, seed)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        outcomes = list(pool.map(run, pairs))

    if strips_dir is not None:
        os.makedirs(strips_dir, exist_ok=True)
        for (record, partial, warped), (s, t) in list(zip(outcomes, pairs))[:strips]:
            save_strip(
                [test[s], partial, warped, test[t]],
                os.path.join(strips_dir, f"pair_{record.pair_id}.png"),
            )

    records = sorted((outcome[0] for outcome in outcomes), key=lambda r: r.pair_id)
    return EvalReport(protocol=protocol, records=records)


def write_eval_report(report: EvalReport, out_dir: str) -> None:
    """report.csv with one row per pair and summary.json with the means."""
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "report.csv"), "w", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(RECORD_COLUMNS)
        for record in report.records:
            writer.writerow(record.as_row())
    summary = report.model_dump(mode="json", exclude={"records"})
    with open(os.path.join(out_dir, "summary.json"), "w") as file:
        json.dump(summary, file, indent=2)


def partial_agnosticism_score(
    checkpoint: Checkpoint,
    source: Silhouette,
    full_target: Silhouette,
    masks: Sequence[Union[RectMask, Silhouette]],
) -> AgnosticismScore:
    """
    Infers from the full target and from each masked version, then compares every pair
    of outcomes: mean IOU between warped outputs and mean max-abs control grid difference.
    """
    if len(masks) < 2:
        raise EvaluationError.invalid(
            "partial_agnosticism_score", "need at least two masks", found=len(masks)
        )
    variants = [full_target]
    for mask in masks:
        if isinstance(mask, Silhouette):
            variants.append(apply_mask_image(full_target, mask))
        else:
            variants.append(apply_mask(full_target, mask))
    results = [infer(checkpoint, source, variant) for variant in variants]
    ious, differences = [], []
    for first, second in itertools.combinations(results, 2):
        ious.append(iou(first.warped, second.warped))
        differences.append(first.control.max_abs_difference(second.control))
    return AgnosticismScore(
        variants=len(variants),
        mean_pairwise_iou=float(np.mean(ious)),
        mean_warp_difference=float(np.mean(differences)),
    )


def centered_occlusion(
    target: Silhouette, fraction: float
) -> Tuple[Union[RectMask, None], float]:
    """
    Rectangle centered on the foreground centroid with the aspect ratio of the foreground
    bounding box, grown pixel by pixel; returns the size whose removed foreground fraction
    is closest to the requested one, with that achieved fraction.
    """
    total = target.foreground_count()
    if fraction <= 0.0 or total == 0:
        return None, 0.0
    row, col = (int(round(v)) for v in foreground_centroid(target))
    top, bottom, left, right = foreground_bbox(target)
    box_h, box_w = bottom - top + 1, right - left + 1
    longest = max(box_h, box_w)
    foreground = target.binarize()

    best, best_fraction = None, 0.0
    for size in range(1, 2 * max(target.height, target.width) + 1):
        mask = RectMask(
            center_row=row,
            center_col=col,
            mask_height=max(1, int(round(size * box_h / longest))),
            mask_width=max(1, int(round(size * box_w / longest))),
        )
        r0, r1, c0, c1 = mask.bounds(target.height, target.width)
        achieved = int(np.count_nonzero(foreground[r0:r1, c0:c1])) / total
        if best is None or abs(achieved - fraction) < abs(best_fraction - fraction):
            best, best_fraction = mask, achieved
        if achieved >= fraction or achieved >= 1.0:
            break
    return best, best_fraction


def stress_test(
    checkpoint: Checkpoint,
    source: Silhouette,
    full_target: Silhouette,
    fractions: Sequence[float],
) -> List[StressRecord]:
    """One inference per requested occlusion fraction; IOU is not expected to be monotone."""
    values = [float(f) for f in fractions]
    ascending = all(b >= a for a, b in zip(values, values[1:]))
    if not ascending or any(not 0.0 <= f < 1.0 for f in values):
        raise EvaluationError.invalid(
            "stress_test", "fractions must be ascending values in [0, 1)", fractions=values
        )
    records = []
    for fraction in values:
        mask, achieved = centered_occlusion(full_target, fraction)
        partial = full_target if mask is None else apply_mask(full_target, mask)
        result = infer(checkpoint, source, partial)
        records.append(
            StressRecord(
                requested_fraction=fraction,
                achieved_fraction=achieved,
                mask=mask,
                iou=iou(result.warped, full_target),
                iou_identity=iou(source, full_target),
            )
        )
    return records
