from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ffdshape.arrays import FloatArray

DEFAULT_BETA1 = 0.9
DEFAULT_BETA2 = 0.999
DEFAULT_EPS = 1e-8


class AdamState(BaseModel):
    """
    First and second moment accumulators keyed like the parameters they follow
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    step: int = Field(default=0, ge=0)
    first_moment: Dict[str, FloatArray] = Field(default_factory=dict)
    second_moment: Dict[str, FloatArray] = Field(default_factory=dict)

    @staticmethod
    def zeros_like(params: Dict[str, np.ndarray]) -> "AdamState":
        return AdamState(
            step=0,
            first_moment={k: np.zeros_like(v, dtype=np.float64) for k, v in params.items()},
            second_moment={k: np.zeros_like(v, dtype=np.float64) for k, v in params.items()},
        )


def adam_step(
    params: Dict[str, np.ndarray],
    grads: Dict[str, np.ndarray],
    state: AdamState,
    learning_rate: float,
    beta1: float = DEFAULT_BETA1,
    beta2: float = DEFAULT_BETA2,
    eps: float = DEFAULT_EPS,
) -> Tuple[Dict[str, np.ndarray], AdamState]:
    """
    One bias-corrected ADAM update of every parameter.

    Returns
    -------
        The updated parameters and the advanced state; inputs are left untouched.
    """
    if state.step == 0 and not state.first_moment:
        state = AdamState.zeros_like(params)
    step = state.step + 1
    correction1 = 1.0 - beta1**step
    correction2 = 1.0 - beta2**step

    updated: Dict[str, np.ndarray] = {}
    first: Dict[str, np.ndarray] = {}
    second: Dict[str, np.ndarray] = {}
    for name, value in params.items():
        grad = np.asarray(grads[name], dtype=np.float64)
        first[name] = beta1 * state.first_moment[name] + (1.0 - beta1) * grad
        second[name] = beta2 * state.second_moment[name] + (1.0 - beta2) * grad * grad
        m_hat = first[name] / correction1
        v_hat = second[name] / correction2
        updated[name] = value - learning_rate * m_hat / (np.sqrt(v_hat) + eps)

    return updated, AdamState(step=step, first_moment=first, second_moment=second)
