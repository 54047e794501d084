from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from meiga import Failure, Result, Success, early_return
from pydantic import ValidationError

from ffdshape.config import Config
from ffdshape.errors import ShapeAlignmentError
from ffdshape.evaluator.enums.mask_protocol import MaskProtocol
from ffdshape.evaluator.evaluation import (
    DEFAULT_STRIPS,
    eval_testset,
    infer,
    partial_agnosticism_score,
    stress_test,
    write_eval_report,
)
from ffdshape.evaluator.evaluator_errors import EvaluationError
from ffdshape.evaluator.grid_sweep import DEFAULT_GRIDS, grid_sweep
from ffdshape.evaluator.models.eval_report import EvalReport
from ffdshape.evaluator.models.experiment_records import (
    AgnosticismScore,
    GridSweepReport,
    InferenceResult,
    StressRecord,
)
from ffdshape.evaluator.models.ransac_models import RansacConfig, RansacResult
from ffdshape.evaluator.ransac import ransac_affine
from ffdshape.evaluator.transfer import transfer
from ffdshape.grids.masking import random_mask
from ffdshape.grids.models.rect_mask import RectMask
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.pair_optimizer.models.optimize_config import OptimizeConfig
from ffdshape.regressor.checkpoint_io import load_checkpoint
from ffdshape.regressor.models.checkpoint import Checkpoint
from ffdshape.sampler.models.dense_warp import DenseWarp
from ffdshape.tools import print_intro, timeit
from ffdshape.trainer.dataset import load_dataset
from ffdshape.trainer.models.dataset import Dataset
from ffdshape.trainer.models.training_sample import LoadedDataset

CheckpointSource = Union[Checkpoint, str]


class Evaluator:
    @staticmethod
    def from_config(
        config: Config, ransac_config: Union[RansacConfig, None] = None
    ) -> "Evaluator":
        return Evaluator(
            ransac_config=ransac_config or RansacConfig(seed=config.seed),
            seed=config.seed,
            threads=config.threads,
            verbose=config.verbose,
        )

    def __init__(
        self,
        ransac_config: Union[RansacConfig, None] = None,
        seed: int = 0,
        threads: int = 1,
        verbose: bool = False,
    ):
        self.ransac_config = ransac_config or RansacConfig(seed=seed)
        self.seed = seed
        self.threads = threads
        self.verbose = verbose

    def load(self, checkpoint: CheckpointSource) -> Result[Checkpoint, ShapeAlignmentError]:
        if isinstance(checkpoint, Checkpoint):
            return Success(checkpoint)
        try:
            return Success(load_checkpoint(checkpoint))
        except ShapeAlignmentError as error:
            return Failure(error)

    @early_return
    def infer(
        self,
        checkpoint: CheckpointSource,
        source: Silhouette,
        partial_target: Silhouette,
        verbose: Optional[bool] = False,
    ) -> Result[InferenceResult, ShapeAlignmentError]:
        """
        Regresses the warp of source towards a (possibly partial) target.

        Parameters
        ----------
        checkpoint
            Trained regressor or the path of its checkpoint file
        source
            Shape to deform
        partial_target
            Target shape, complete or occluded
        verbose
            Used for print the operation trace

        Returns
        -------
            A Result where if the operation is successful it returns an InferenceResult.
            Otherwise, it returns a ShapeAlignmentError (resolution or checkpoint mismatch).
        """
        print_intro("infer", verbose=self.verbose or verbose)
        loaded = self.load(checkpoint).unwrap_or_return()
        try:
            return Success(infer(loaded, source, partial_target))
        except ShapeAlignmentError as error:
            return Failure(error)

    @early_return
    @timeit
    def eval_testset(
        self,
        checkpoint: CheckpointSource,
        dataset: Union[Dataset, LoadedDataset],
        protocol: MaskProtocol = MaskProtocol.RANDOM,
        mask_range: Tuple[float, float] = (0.2, 0.6),
        out_dir: Union[str, None] = None,
        strips_dir: Union[str, None] = None,
        strips: int = DEFAULT_STRIPS,
        verbose: Optional[bool] = False,
    ) -> Result[EvalReport, ShapeAlignmentError]:
        """
        Scores every ordered test pair and writes report.csv and summary.json to out_dir.

        Returns
        -------
            A Result where if the operation is successful it returns an EvalReport.
            Otherwise, it returns a ShapeAlignmentError.
        """
        print_intro("eval_testset", verbose=self.verbose or verbose)
        loaded_checkpoint = self.load(checkpoint).unwrap_or_return()
        try:
            loaded = (
                dataset
                if isinstance(dataset, LoadedDataset)
                else load_dataset(dataset, loaded_checkpoint.params.architecture.resolution)
            )
            report = eval_testset(
                loaded_checkpoint,
                loaded.test,
                names=loaded.dataset.test_items,
                protocol=protocol,
                mask_range=mask_range,
                seed=self.seed,
                strips_dir=strips_dir,
                strips=strips,
                threads=self.threads,
            )
            if out_dir is not None:
                write_eval_report(report, out_dir)
        except ShapeAlignmentError as error:
            return Failure(error)
        except OSError as exc:
            return Failure(EvaluationError.unreadable("eval_testset", str(out_dir), str(exc)))
        return Success(report)

    @early_return
    def partial_agnosticism(
        self,
        checkpoint: CheckpointSource,
        source: Silhouette,
        full_target: Silhouette,
        masks: Sequence[Union[RectMask, Silhouette]],
    ) -> Result[AgnosticismScore, ShapeAlignmentError]:
        loaded = self.load(checkpoint).unwrap_or_return()
        try:
            return Success(partial_agnosticism_score(loaded, source, full_target, masks))
        except ShapeAlignmentError as error:
            return Failure(error)

    def random_masks(
        self, target: Silhouette, count: int, size_range: Tuple[float, float] = (0.2, 0.6)
    ) -> Result[List[RectMask], ShapeAlignmentError]:
        """count random rectangles drawn from a stream seeded by the evaluator seed."""
        rng = np.random.default_rng(self.seed)
        try:
            return Success([random_mask(target, size_range, rng) for _ in range(count)])
        except ShapeAlignmentError as error:
            return Failure(error)

    @early_return
    def stress_test(
        self,
        checkpoint: CheckpointSource,
        source: Silhouette,
        full_target: Silhouette,
        fractions: Sequence[float],
    ) -> Result[List[StressRecord], ShapeAlignmentError]:
        loaded = self.load(checkpoint).unwrap_or_return()
        try:
            return Success(stress_test(loaded, source, full_target, fractions))
        except ShapeAlignmentError as error:
            return Failure(error)

    @timeit
    def ransac(
        self, source: Silhouette, target: Silhouette, verbose: Optional[bool] = False
    ) -> Result[RansacResult, ShapeAlignmentError]:
        """Affine-RANSAC baseline alignment of source onto target."""
        print_intro("ransac_affine", verbose=self.verbose or verbose)
        try:
            return Success(ransac_affine(source, target, self.ransac_config))
        except ShapeAlignmentError as error:
            return Failure(error)
        except ValidationError as exc:
            return Failure(EvaluationError.from_validation("ransac_affine", exc))

    def transfer(
        self, image: np.ndarray, warp: DenseWarp, labels: bool = False
    ) -> Result[np.ndarray, ShapeAlignmentError]:
        try:
            return Success(transfer(image, warp, labels=labels))
        except ShapeAlignmentError as error:
            return Failure(error)

    @timeit
    def grid_sweep(
        self,
        source: Silhouette,
        target: Silhouette,
        optimize_config: Union[OptimizeConfig, None] = None,
        grids: Sequence[Tuple[int, int]] = DEFAULT_GRIDS,
        verbose: Optional[bool] = False,
    ) -> Result[GridSweepReport, ShapeAlignmentError]:
        """Direct alignment of one pair at each grid resolution, reporting IOU and smoothness."""
        print_intro("grid_sweep", verbose=self.verbose or verbose)
        try:
            return Success(grid_sweep(source, target, optimize_config or OptimizeConfig(), grids))
        except ShapeAlignmentError as error:
            return Failure(error)
        except ValidationError as exc:
            return Failure(EvaluationError.from_validation("grid_sweep", exc))
