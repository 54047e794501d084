import json
import struct

import numpy as np

from ffdshape.sampler.models.dense_warp import DenseWarp
from ffdshape.sampler.sampler_errors import SamplerError

HEADER = struct.Struct("<II")


def save_dense_warp(warp: DenseWarp, path: str) -> None:
    """Writes <u4 height, <u4 width, then the x and y planes as <f4, plus a JSON sidecar."""
    with open(path, "wb") as file:
        file.write(HEADER.pack(warp.height, warp.width))
        file.write(np.asarray(warp.x, dtype="<f4").tobytes())
        file.write(np.asarray(warp.y, dtype="<f4").tobytes())
    with open(f"{path}.json", "w") as file:
        json.dump(
            {
                "height": warp.height,
                "width": warp.width,
                "dtype": "float32",
                "byte_order": "little",
                "planes": ["x", "y"],
            },
            file,
            indent=2,
        )


def load_dense_warp(path: str) -> DenseWarp:
    with open(path, "rb") as file:
        content = file.read()
    if len(content) < HEADER.size:
        raise SamplerError.unreadable("load_dense_warp", path, "truncated header")
    height, width = HEADER.unpack_from(content)
    plane = height * width
    expected = HEADER.size + 2 * plane * 4
    if len(content) != expected:
        raise SamplerError.unreadable(
            "load_dense_warp", path, f"expected {expected} bytes, found {len(content)}"
        )
    data = np.frombuffer(content, dtype="<f4", offset=HEADER.size).astype(np.float64)
    return DenseWarp(
        x=data[:plane].reshape(height, width), y=data[plane:].reshape(height, width)
    )
