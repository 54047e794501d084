import csv
import os
from typing import Optional, Union

from meiga import Failure, Result, Success, isSuccess
from pydantic import ValidationError

from ffdshape.config import Config
from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.grids.silhouette_io import save_silhouette
from ffdshape.pair_optimizer.models.alignment_result import AlignmentResult
from ffdshape.pair_optimizer.models.optimize_config import OptimizeConfig
from ffdshape.pair_optimizer.pair_optimizer import align_pair, align_pair_with_rotation
from ffdshape.pair_optimizer.pair_optimizer_errors import AlignmentError
from ffdshape.parametrization.models.warp_record import WarpRecord
from ffdshape.tools import timeit

TRACE_COLUMNS = ["iter", "shape_loss", "reg_loss", "total"]


def write_trace(result: AlignmentResult, path: str) -> None:
    with open(path, "w", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(TRACE_COLUMNS)
        for report in result.loss_trace:
            writer.writerow(
                [report.step, repr(report.shape_loss), repr(report.reg_loss), repr(report.total)]
            )


class Aligner:
    @staticmethod
    def from_config(
        config: Config, optimize_config: Union[OptimizeConfig, None] = None
    ) -> "Aligner":
        optimize_config = optimize_config or OptimizeConfig(
            grid_m=config.grid_m, grid_n=config.grid_n, seed=config.seed
        )
        return Aligner(config=optimize_config, verbose=config.verbose)

    def __init__(self, config: Union[OptimizeConfig, None] = None, verbose: bool = False):
        self.config = config or OptimizeConfig()
        self.verbose = verbose

    @timeit
    def align(
        self,
        source: Silhouette,
        target: Silhouette,
        rotation: bool = False,
        verbose: Optional[bool] = False,
    ) -> Result[AlignmentResult, AlignmentError]:
        """
        Directly optimizes the warp that deforms source onto target.

        Parameters
        ----------
        source
            Shape to deform
        target
            Complete target shape
        rotation
            Also recover a global rotation composed with the grid warp
        verbose
            Used for print the loss trace as well as the time elapsed

        Returns
        -------
            A Result where if the operation is successful it returns an AlignmentResult.
            Otherwise, it returns an AlignmentError (code 2 invalid input, code 3 divergence).
        """
        verbose = bool(self.verbose or verbose)
        run = align_pair_with_rotation if rotation else align_pair
        try:
            return Success(run(source, target, self.config, verbose=verbose))
        except AlignmentError as error:
            return Failure(error)
        except ValidationError as exc:
            return Failure(AlignmentError.from_validation("align", exc))

    def save(self, result: AlignmentResult, out_dir: str) -> Result[bool, AlignmentError]:
        """Writes warp.json, warped.png and trace.csv into out_dir."""
        try:
            os.makedirs(out_dir, exist_ok=True)
            WarpRecord(
                height=result.warped.height,
                width=result.warped.width,
                mode=self.config.mode,
                control=result.control,
                delta=result.delta,
                theta=result.theta,
            ).save(os.path.join(out_dir, "warp.json"))
            save_silhouette(result.warped, os.path.join(out_dir, "warped.png"))
            write_trace(result, os.path.join(out_dir, "trace.csv"))
        except OSError as exc:
            return Failure(AlignmentError.unreadable("save_alignment", out_dir, str(exc)))
        return isSuccess
