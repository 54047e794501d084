from ffdshape.sampler.dense_warp_io import load_dense_warp, save_dense_warp
from ffdshape.sampler.models import DenseWarp, WarpGradients
from ffdshape.sampler.sampler import (
    affine_warp,
    compose,
    compose_backward,
    interpolation_matrix,
    resample,
    resample_backward,
    rotation_warp,
    rotation_warp_derivative,
    sample_image,
    scaling_warp,
    upsample,
    upsample_backward,
    warp_record_lookup,
)
from ffdshape.sampler.sampler_errors import SamplerError

__all__ = [
    "DenseWarp",
    "SamplerError",
    "WarpGradients",
    "affine_warp",
    "compose",
    "compose_backward",
    "interpolation_matrix",
    "load_dense_warp",
    "resample",
    "resample_backward",
    "rotation_warp",
    "rotation_warp_derivative",
    "sample_image",
    "save_dense_warp",
    "scaling_warp",
    "upsample",
    "upsample_backward",
    "warp_record_lookup",
]
