from enum import Enum


class MaskProtocol(str, Enum):
    NONE = "none"
    RANDOM = "random"
