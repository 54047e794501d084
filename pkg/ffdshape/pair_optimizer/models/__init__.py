from ffdshape.pair_optimizer.models.alignment_result import AlignmentResult
from ffdshape.pair_optimizer.models.optimize_config import OptimizeConfig

__all__ = ["AlignmentResult", "OptimizeConfig"]
