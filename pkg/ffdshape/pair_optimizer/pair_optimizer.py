import math
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from ffdshape.grids.models.silhouette import Silhouette
from ffdshape.losses.loss_report import LossReport
from ffdshape.objective.objective import ObjectiveEvaluation, evaluate_objective
from ffdshape.optim.adam import AdamState, adam_step
from ffdshape.pair_optimizer.models.alignment_result import AlignmentResult
from ffdshape.pair_optimizer.models.optimize_config import OptimizeConfig
from ffdshape.pair_optimizer.pair_optimizer_errors import AlignmentError
from ffdshape.parametrization.models.control_warp import ControlWarp
from ffdshape.parametrization.models.differential_warp import DifferentialWarp
from ffdshape.parametrization.parametrization import identity_differential
from ffdshape.tools import print_intro, print_report

THETA = "theta"

IterationCallback = Callable[[int, ControlWarp], None]


def _check_pair(operation: str, source: Silhouette, target: Silhouette) -> None:
    if source.shape != target.shape:
        raise AlignmentError.invalid(
            operation,
            "source and target dimensions differ",
            source=list(source.shape),
            target=list(target.shape),
        )
    if source.foreground_count() == 0:
        raise AlignmentError.invalid(operation, "source has no foreground")


def has_converged(trace: List[LossReport], config: OptimizeConfig) -> bool:
    latest = trace[-1].total
    if latest <= config.absolute_tol:
        return True
    if len(trace) <= config.convergence_window:
        return False
    previous = trace[-1 - config.convergence_window].total
    return abs(previous - latest) / latest < config.convergence_tol


def _evaluate(
    operation: str,
    iteration: int,
    source: Silhouette,
    target: Silhouette,
    params: Dict[str, np.ndarray],
    config: OptimizeConfig,
    with_rotation: bool,
) -> ObjectiveEvaluation:
    try:
        return evaluate_objective(
            source,
            target,
            DifferentialWarp.from_arrays(params),
            config.reg_weight,
            config.mode,
            theta=float(params[THETA]) if with_rotation else None,
            normalize=config.normalize_losses,
        )
    except ValueError:
        # non-finite parameters fail model validation
        raise AlignmentError.diverged(operation, iteration, math.nan)


def _adam(
    params: Dict[str, np.ndarray],
    grads: Dict[str, np.ndarray],
    state: AdamState,
    learning_rate: float,
    config: OptimizeConfig,
) -> Tuple[Dict[str, np.ndarray], AdamState]:
    return adam_step(
        params,
        grads,
        state,
        learning_rate,
        beta1=config.adam_beta1,
        beta2=config.adam_beta2,
        eps=config.adam_eps,
    )


def _optimize(
    operation: str,
    source: Silhouette,
    target: Silhouette,
    config: OptimizeConfig,
    with_rotation: bool,
    verbose: bool,
    on_iteration: Union[IterationCallback, None] = None,
) -> AlignmentResult:
    _check_pair(operation, source, target)
    print_intro(operation, verbose=verbose)

    grid = identity_differential(config.grid_m, config.grid_n).as_arrays()
    grid_state = AdamState.zeros_like(grid)
    rotation = {THETA: np.array(0.0)}
    rotation_state = AdamState.zeros_like(rotation)

    trace: List[LossReport] = []
    best: Union[ObjectiveEvaluation, None] = None
    best_grid, best_rotation = grid, rotation
    converged = False
    for iteration in range(config.max_iters):
        params = {**grid, **rotation} if with_rotation else grid
        evaluation = _evaluate(
            operation, iteration, source, target, params, config, with_rotation
        )
        report = evaluation.report.at_step(iteration)
        if not report.is_finite() or (
            trace
            and trace[0].total > config.absolute_tol
            and report.total > config.divergence_factor * trace[0].total
        ):
            raise AlignmentError.diverged(operation, iteration, report.total)
        trace.append(report)
        print_report(iteration, report, verbose=verbose, every=50)
        if on_iteration is not None:
            on_iteration(iteration, evaluation.forward.control)

        if best is None or report.total < best.report.total:
            best, best_grid, best_rotation = evaluation, grid, rotation
        if has_converged(trace, config):
            converged = True
            break

        # the grid stays at identity until the rotation has settled
        if with_rotation:
            rotation, rotation_state = _adam(
                rotation,
                {THETA: np.array(evaluation.grad_theta)},
                rotation_state,
                config.theta_learning_rate,
                config,
            )
        if not with_rotation or iteration >= config.rotation_warmup:
            grid, grid_state = _adam(
                grid, evaluation.grad_raw.as_arrays(), grid_state, config.learning_rate, config
            )

    assert best is not None
    return AlignmentResult(
        control=best.forward.control,
        delta=DifferentialWarp.from_arrays(best_grid),
        warped=best.forward.estimated,
        loss_trace=trace,
        iters_run=len(trace),
        converged=converged,
        theta=float(best_rotation[THETA]) if with_rotation else None,
    )


def align_pair(
    source: Silhouette,
    target: Silhouette,
    config: OptimizeConfig,
    verbose: bool = False,
    on_iteration: Union[IterationCallback, None] = None,
) -> AlignmentResult:
    """
    Optimizes the differential warp of one pair with ADAM, starting from the identity.

    Parameters
    ----------
    source
        Shape to deform
    target
        Shape to reach
    config
        Iteration budget, step size, regularization and stopping rules
    on_iteration
        Called with the iteration index and the control grid of every evaluated iterate

    Returns
    -------
        The best iterate found (its total never exceeds the initial total).
        Raises AlignmentError on invalid inputs or divergence.
    """
    return _optimize("align_pair", source, target, config, False, verbose, on_iteration)


def align_pair_with_rotation(
    source: Silhouette,
    target: Silhouette,
    config: OptimizeConfig,
    verbose: bool = False,
    on_iteration: Union[IterationCallback, None] = None,
) -> AlignmentResult:
    """
    Like align_pair, jointly optimizing a global rotation composed after the grid warp.
    The first config.rotation_warmup iterations move only the rotation, with its own
    step size; the grid is released afterwards.
    """
    return _optimize(
        "align_pair_with_rotation", source, target, config, True, verbose, on_iteration
    )
