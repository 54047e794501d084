from typing import Any, List

import numpy as np
from pydantic import BeforeValidator, PlainSerializer
from typing_extensions import Annotated


def as_frozen_array(value: Any) -> np.ndarray:
    array = np.array(value, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


def to_nested_list(array: np.ndarray) -> List[Any]:
    return array.tolist()  # type: ignore


FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(as_frozen_array),
    PlainSerializer(to_nested_list, return_type=list),
]
