from typing import Tuple

import numpy as np

from ffdshape.parametrization.parametrization_errors import ParametrizationError


def _as_sequence(values: np.ndarray, operation: str) -> np.ndarray:
    sequence = np.asarray(values, dtype=np.float64)
    if sequence.ndim != 1 or sequence.size == 0:
        raise ParametrizationError.invalid(
            operation, "expected a non-empty 1D sequence", shape=list(sequence.shape)
        )
    return sequence


def cumsum_1d(delta: np.ndarray, a0: float) -> np.ndarray:
    """output[k] = a0 + sum(delta[:k+1])"""
    return a0 + np.cumsum(_as_sequence(delta, "cumsum_1d"))  # type: ignore


def cumsum_1d_adjoint(grad_out: np.ndarray) -> Tuple[np.ndarray, float]:
    """Suffix sums of the incoming gradient, plus the gradient of the offset."""
    grad = _as_sequence(grad_out, "cumsum_1d_adjoint")
    return suffix_sum(grad, axis=0), float(grad.sum())


def suffix_sum(values: np.ndarray, axis: int) -> np.ndarray:
    return np.flip(np.cumsum(np.flip(values, axis=axis), axis=axis), axis=axis)  # type: ignore
