from dataclasses import dataclass

from ffdshape.errors import ShapeAlignmentError


@dataclass
class RegressorError(ShapeAlignmentError):
    pass


@dataclass
class CheckpointError(ShapeAlignmentError):
    pass
