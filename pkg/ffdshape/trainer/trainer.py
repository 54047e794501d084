import os
from typing import Dict, Optional, Sequence, Union

from meiga import Failure, Result, Success, early_return
from pydantic import ValidationError

from ffdshape.config import Config
from ffdshape.errors import ShapeAlignmentError
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.tools import print_intro, timeit
from ffdshape.trainer.dataset import load_dataset, split_dataset
from ffdshape.trainer.models.dataset import Dataset
from ffdshape.trainer.models.train_config import TrainConfig
from ffdshape.trainer.models.training_sample import LoadedDataset
from ffdshape.trainer.models.training_summary import AblationRecord, TrainingSummary
from ffdshape.trainer.trainer_errors import DatasetError, TrainingError
from ffdshape.trainer.training import train


class Trainer:
    @staticmethod
    def from_config(config: Config, train_config: Union[TrainConfig, None] = None) -> "Trainer":
        train_config = train_config or TrainConfig(
            resolution=config.resolution,
            grid_m=config.grid_m,
            grid_n=config.grid_n,
            seed=config.seed,
            threads=config.threads,
        )
        return Trainer(config=train_config, verbose=config.verbose)

    def __init__(self, config: Union[TrainConfig, None] = None, verbose: bool = False):
        self.config = config or TrainConfig()
        self.verbose = verbose

    def split(
        self,
        directory: str,
        manifest_path: Union[str, None] = None,
        verbose: Optional[bool] = False,
    ) -> Result[Dataset, DatasetError]:
        """
        Splits a directory of silhouettes into train and test items.

        Parameters
        ----------
        directory
            Folder of silhouette images
        manifest_path
            Where to write the manifest JSON
        verbose
            Used for print the operation trace

        Returns
        -------
            A Result where if the operation is successful it returns a Dataset.
            Otherwise, it returns a DatasetError.
        """
        print_intro("split_dataset", verbose=self.verbose or verbose)
        try:
            return Success(
                split_dataset(
                    directory,
                    self.config.seed,
                    self.config.resolution,
                    test_size=self.config.test_size,
                    manifest_path=manifest_path,
                )
            )
        except DatasetError as error:
            return Failure(error)
        except OSError as exc:
            return Failure(
                DatasetError.unreadable("split_dataset", manifest_path or directory, str(exc))
            )

    def load(self, dataset: Dataset) -> Result[LoadedDataset, DatasetError]:
        try:
            return Success(load_dataset(dataset, self.config.resolution))
        except DatasetError as error:
            return Failure(error)

    @timeit
    def train(
        self,
        dataset: Union[Dataset, LoadedDataset],
        out_dir: str,
        resume_from: Union[str, None] = None,
        verbose: Optional[bool] = False,
    ) -> Result[TrainingSummary, ShapeAlignmentError]:
        """
        Trains the warp regressor on a dataset split.

        Parameters
        ----------
        dataset
            Dataset manifest or already decoded dataset
        out_dir
            Output folder for metrics and checkpoints
        resume_from
            Optional checkpoint to continue from
        verbose
            Used for print the loss trace as well as the time elapsed

        Returns
        -------
            A Result where if the operation is successful it returns a TrainingSummary.
            Otherwise, it returns a ShapeAlignmentError (code 2 invalid input, code 3 divergence).
        """
        verbose = bool(self.verbose or verbose)
        try:
            loaded = dataset if isinstance(dataset, LoadedDataset) else load_dataset(
                dataset, self.config.resolution
            )
            return Success(train(loaded, self.config, out_dir, resume_from, verbose=verbose))
        except ShapeAlignmentError as error:
            return Failure(error)
        except ValidationError as exc:
            return Failure(TrainingError.from_validation("train", exc))
        except OSError as exc:
            return Failure(TrainingError.unreadable("train", out_dir, str(exc)))

    @early_return
    def ablation(
        self,
        dataset: Union[Dataset, LoadedDataset],
        out_dir: str,
        modes: Sequence[RegularizationMode] = tuple(RegularizationMode),
        verbose: Optional[bool] = False,
    ) -> Result[Dict[str, AblationRecord], ShapeAlignmentError]:
        """
        Trains one model per regularization mode with identical seeds and data, each in
        out_dir/<mode>, and reports their final held-out IOU and smoothness.
        """
        loaded = (
            dataset
            if isinstance(dataset, LoadedDataset)
            else self.load(dataset).unwrap_or_return()
        )
        records: Dict[str, AblationRecord] = {}
        for mode in modes:
            mode = RegularizationMode(mode)
            trainer = Trainer(
                config=self.config.model_copy(update={"mode": mode}), verbose=self.verbose
            )
            summary = trainer.train(
                loaded, os.path.join(out_dir, mode.value), verbose=verbose
            ).unwrap_or_return()
            final = summary.final_epoch
            records[mode.value] = AblationRecord(
                mode=mode,
                checkpoint_path=summary.checkpoint_path,
                heldout_iou=final.heldout_iou if final else None,
                identity_iou=final.identity_iou if final else None,
                smoothness=final.smoothness if final else None,
                smoothness_trace=[epoch.smoothness for epoch in summary.epochs],
            )
        return Success(records)
