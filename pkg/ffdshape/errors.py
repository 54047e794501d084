from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Union

from meiga import Error

VALIDATION_CODE = 2
DIVERGENCE_CODE = 3


@dataclass
class ShapeAlignmentError(Error):
    operation: str
    code: int
    message: Union[Dict[str, Any], None] = None  # type: ignore

    def __str__(self) -> str:
        return self.__repr__()

    def __repr__(self) -> str:
        return f"[{self.__class__.__name__}: [operation: {self.operation} | code: {self.code} | message: {self.message}]]"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.__class__.__name__,
            "operation": self.operation,
            "code": self.code,
            "message": self.message,
        }

    @classmethod
    def invalid(cls, operation: str, reason: str, **details: Any) -> Any:
        return cls(
            operation=operation,
            code=VALIDATION_CODE,
            message={"message": reason, **details},
        )

    @classmethod
    def unreadable(cls, operation: str, path: str, reason: str) -> Any:
        return cls(
            operation=operation,
            code=VALIDATION_CODE,
            message={"message": reason, "path": path},
        )

    @classmethod
    def diverged(cls, operation: str, iteration: int, total: float) -> Any:
        return cls(
            operation=operation,
            code=DIVERGENCE_CODE,
            message={
                "message": "loss became non-finite or exploded",
                "iteration": iteration,
                "total": total,
            },
        )

    @classmethod
    def from_validation(cls, operation: str, exc: Exception) -> Any:
        return cls(
            operation=operation, code=VALIDATION_CODE, message={"message": str(exc)}
        )
