from ffdshape.pair_optimizer.aligner import Aligner, write_trace
from ffdshape.pair_optimizer.models import AlignmentResult, OptimizeConfig
from ffdshape.pair_optimizer.pair_optimizer import align_pair, align_pair_with_rotation
from ffdshape.pair_optimizer.pair_optimizer_errors import AlignmentError

__all__ = [
    "Aligner",
    "AlignmentError",
    "AlignmentResult",
    "OptimizeConfig",
    "align_pair",
    "align_pair_with_rotation",
    "write_trace",
]
