from enum import Enum


class RegularizationMode(str, Enum):
    NONE = "none"
    TV = "tv"
    TV_MONOTONIC = "tvm"

    @property
    def is_monotonic(self) -> bool:
        return self is RegularizationMode.TV_MONOTONIC

    @property
    def is_regularized(self) -> bool:
        return self is not RegularizationMode.NONE
