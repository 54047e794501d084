"""Public API of ffdshape, free-form deformation alignment of 2D silhouettes"""
from typing import List

from ffdshape.config import Config

# Facades
from ffdshape.evaluator.evaluator import Evaluator
from ffdshape.grids.shapes import Shapes
from ffdshape.pair_optimizer.aligner import Aligner
from ffdshape.trainer.trainer import Trainer

modules: List[str] = []

# Models
from ffdshape.evaluator.enums.mask_protocol import MaskProtocol
from ffdshape.evaluator.models import (
    AffineParams,
    AgnosticismScore,
    EvalReport,
    GridSweepReport,
    InferenceResult,
    PairRecord,
    RansacConfig,
    RansacResult,
    StressRecord,
)
from ffdshape.grids.models import RectMask, Silhouette
from ffdshape.losses.loss_report import LossReport
from ffdshape.pair_optimizer.models import AlignmentResult, OptimizeConfig
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.parametrization.models import ControlWarp, DifferentialWarp, WarpRecord
from ffdshape.regressor.models import Architecture, Checkpoint, RegressorParams
from ffdshape.sampler.models import DenseWarp
from ffdshape.trainer.models import Dataset, TrainConfig, TrainingSummary

classes = [
    "Config",
    "Shapes",
    "Aligner",
    "Trainer",
    "Evaluator",
    "Silhouette",
    "RectMask",
    "DifferentialWarp",
    "ControlWarp",
    "WarpRecord",
    "DenseWarp",
    "RegularizationMode",
    "LossReport",
    "OptimizeConfig",
    "AlignmentResult",
    "Architecture",
    "RegressorParams",
    "Checkpoint",
    "TrainConfig",
    "Dataset",
    "TrainingSummary",
    "MaskProtocol",
    "EvalReport",
    "PairRecord",
    "InferenceResult",
    "AgnosticismScore",
    "StressRecord",
    "GridSweepReport",
    "RansacConfig",
    "RansacResult",
    "AffineParams",
]

# Errors
from ffdshape.errors import ShapeAlignmentError
from ffdshape.evaluator.evaluator_errors import EvaluationError, RansacError
from ffdshape.grids.grids_errors import GridsError
from ffdshape.losses.losses_errors import LossesError
from ffdshape.pair_optimizer.pair_optimizer_errors import AlignmentError
from ffdshape.parametrization.parametrization_errors import ParametrizationError
from ffdshape.regressor.regressor_errors import CheckpointError, RegressorError
from ffdshape.sampler.sampler_errors import SamplerError
from ffdshape.trainer.trainer_errors import DatasetError, TrainingError

errors = [
    "ShapeAlignmentError",
    "GridsError",
    "ParametrizationError",
    "SamplerError",
    "LossesError",
    "AlignmentError",
    "RegressorError",
    "CheckpointError",
    "TrainingError",
    "DatasetError",
    "EvaluationError",
    "RansacError",
]

__all__ = modules + classes + errors
