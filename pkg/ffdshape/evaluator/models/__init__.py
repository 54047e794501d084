from ffdshape.evaluator.models.eval_report import RECORD_COLUMNS, EvalReport, PairRecord
from ffdshape.evaluator.models.experiment_records import (
    AgnosticismScore,
    GridSweepRecord,
    GridSweepReport,
    InferenceResult,
    StressRecord,
)
from ffdshape.evaluator.models.ransac_models import AffineParams, RansacConfig, RansacResult

__all__ = [
    "AffineParams",
    "AgnosticismScore",
    "EvalReport",
    "GridSweepRecord",
    "GridSweepReport",
    "InferenceResult",
    "PairRecord",
    "RECORD_COLUMNS",
    "RansacConfig",
    "RansacResult",
    "StressRecord",
]
