from ffdshape.trainer.dataset import held_out_size, list_images, load_dataset, split_dataset
from ffdshape.trainer.models import (
    AblationRecord,
    Dataset,
    EpochRecord,
    LoadedDataset,
    TrainConfig,
    TrainingSample,
    TrainingSummary,
)
from ffdshape.trainer.sampling import augment, heldout_samples, sample_batch
from ffdshape.trainer.synth import generate_shapes, write_synthetic_dataset
from ffdshape.trainer.trainer_errors import DatasetError, TrainingError
from ffdshape.trainer.training import evaluate_heldout, sample_gradients, steps_per_epoch, train
from ffdshape.trainer.trainer import Trainer

__all__ = [
    "Trainer",
    "AblationRecord",
    "Dataset",
    "DatasetError",
    "EpochRecord",
    "LoadedDataset",
    "TrainConfig",
    "TrainingError",
    "TrainingSample",
    "TrainingSummary",
    "augment",
    "evaluate_heldout",
    "generate_shapes",
    "held_out_size",
    "heldout_samples",
    "list_images",
    "load_dataset",
    "sample_batch",
    "sample_gradients",
    "split_dataset",
    "steps_per_epoch",
    "train",
    "write_synthetic_dataset",
]
