from ffdshape.objective.objective import (
    ObjectiveEvaluation,
    WarpForward,
    evaluate_objective,
    warp_forward,
    warp_smoothness,
)

__all__ = [
    "ObjectiveEvaluation",
    "WarpForward",
    "evaluate_objective",
    "warp_forward",
    "warp_smoothness",
]
