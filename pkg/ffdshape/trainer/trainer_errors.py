from dataclasses import dataclass

from ffdshape.errors import ShapeAlignmentError


@dataclass
class TrainingError(ShapeAlignmentError):
    pass


@dataclass
class DatasetError(ShapeAlignmentError):
    pass
