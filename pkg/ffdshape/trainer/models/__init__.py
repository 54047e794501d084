from ffdshape.trainer.models.dataset import Dataset
from ffdshape.trainer.models.train_config import TrainConfig
from ffdshape.trainer.models.training_sample import LoadedDataset, TrainingSample
from ffdshape.trainer.models.training_summary import (
    AblationRecord,
    EpochRecord,
    TrainingSummary,
)

__all__ = [
    "AblationRecord",
    "Dataset",
    "EpochRecord",
    "LoadedDataset",
    "TrainConfig",
    "TrainingSample",
    "TrainingSummary",
]
