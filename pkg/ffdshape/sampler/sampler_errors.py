from dataclasses import dataclass

from ffdshape.errors import ShapeAlignmentError


@dataclass
class SamplerError(ShapeAlignmentError):
    pass
