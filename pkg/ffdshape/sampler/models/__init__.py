from ffdshape.sampler.models.dense_warp import DenseWarp
from ffdshape.sampler.models.warp_gradients import WarpGradients

__all__ = ["DenseWarp", "WarpGradients"]
