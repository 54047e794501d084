from dataclasses import dataclass

from ffdshape.errors import ShapeAlignmentError


@dataclass
class EvaluationError(ShapeAlignmentError):
    pass


@dataclass
class RansacError(ShapeAlignmentError):
    pass
