from typing import List, Sequence, Tuple

from ffdshape.evaluator.models.experiment_records import GridSweepRecord, GridSweepReport
from ffdshape.grids.metrics import iou
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.objective.objective import warp_smoothness
from ffdshape.pair_optimizer.models.optimize_config import OptimizeConfig
from ffdshape.pair_optimizer.pair_optimizer import align_pair

DEFAULT_GRIDS: List[Tuple[int, int]] = [(2, 2), (4, 4), (8, 8), (16, 16)]


def grid_sweep(
    source: Silhouette,
    target: Silhouette,
    config: OptimizeConfig,
    grids: Sequence[Tuple[int, int]] = DEFAULT_GRIDS,
) -> GridSweepReport:
    """Direct alignment of one pair at several control grid resolutions."""
    records = []
    for m, n in grids:
        result = align_pair(source, target, config.model_copy(update={"grid_m": m, "grid_n": n}))
        records.append(
            GridSweepRecord(
                m=m,
                n=n,
                iou=iou(result.warped, target),
                smoothness=warp_smoothness(result.delta, config.mode),
                total=result.best_total,
                iters_run=result.iters_run,
            )
        )
    return GridSweepReport(records=records)
