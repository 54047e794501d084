from ffdshape.evaluator.enums import MaskProtocol
from ffdshape.evaluator.evaluation import (
    centered_occlusion,
    eval_testset,
    infer,
    partial_agnosticism_score,
    stress_test,
    write_eval_report,
)
from ffdshape.evaluator.evaluator_errors import EvaluationError, RansacError
from ffdshape.evaluator.grid_sweep import DEFAULT_GRIDS, grid_sweep
from ffdshape.evaluator.models import (
    AffineParams,
    AgnosticismScore,
    EvalReport,
    GridSweepRecord,
    GridSweepReport,
    InferenceResult,
    PairRecord,
    RansacConfig,
    RansacResult,
    StressRecord,
)
from ffdshape.evaluator.ransac import contour_points, ransac_affine, solve_affine
from ffdshape.evaluator.transfer import load_image, save_image, transfer
from ffdshape.evaluator.evaluator import Evaluator

__all__ = [
    "Evaluator",
    "AffineParams",
    "AgnosticismScore",
    "DEFAULT_GRIDS",
    "EvalReport",
    "EvaluationError",
    "GridSweepRecord",
    "GridSweepReport",
    "InferenceResult",
    "MaskProtocol",
    "PairRecord",
    "RansacConfig",
    "RansacError",
    "RansacResult",
    "StressRecord",
    "centered_occlusion",
    "contour_points",
    "eval_testset",
    "grid_sweep",
    "infer",
    "load_image",
    "partial_agnosticism_score",
    "ransac_affine",
    "save_image",
    "solve_affine",
    "stress_test",
    "transfer",
    "write_eval_report",
]
