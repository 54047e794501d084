import json
import os
import struct
from typing import Any, Dict, List, Union

import numpy as np
from pydantic import ValidationError

from ffdshape.optim.adam import AdamState
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.regressor.models.checkpoint import (
    CHECKPOINT_FORMAT_VERSION,
    Checkpoint,
    CheckpointHeader,
    ParameterEntry,
)
from ffdshape.regressor.models.regressor_params import PARAMETER_ORDER, RegressorParams
from ffdshape.regressor.regressor_errors import CheckpointError

MAGIC = b"FFDSCKPT"
BLOB_DTYPE = np.dtype("<f4")
_LENGTH = struct.Struct("<I")


def _flatten(arrays: Dict[str, np.ndarray]) -> List[np.ndarray]:
    return [np.asarray(arrays[name], dtype=BLOB_DTYPE).ravel() for name in PARAMETER_ORDER]


def save_checkpoint(
    path: str,
    params: RegressorParams,
    step: int,
    mode: RegularizationMode,
    adam_state: Union[AdamState, None] = None,
    config: Union[Dict[str, Any], None] = None,
) -> CheckpointHeader:
    """
    Writes MAGIC, a <u4 header length, the JSON header and the float32 blob
    (parameters in PARAMETER_ORDER, then ADAM first and second moments when given).
    The file appears atomically.
    """
    arrays = params.as_arrays()
    has_moments = adam_state is not None and bool(adam_state.first_moment)
    header = CheckpointHeader(
        format_version=CHECKPOINT_FORMAT_VERSION,
        architecture=params.architecture,
        mode=mode,
        step=step,
        config=config or {},
        parameters=[
            ParameterEntry(name=name, shape=list(arrays[name].shape)) for name in PARAMETER_ORDER
        ],
        optimizer_step=adam_state.step if has_moments else None,  # type: ignore[union-attr]
    )
    chunks = _flatten(arrays)
    if has_moments:
        chunks += _flatten(adam_state.first_moment)  # type: ignore[union-attr,arg-type]
        chunks += _flatten(adam_state.second_moment)  # type: ignore[union-attr,arg-type]
    header_bytes = header.model_dump_json().encode("utf-8")

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "wb") as file:
            file.write(MAGIC)
            file.write(_LENGTH.pack(len(header_bytes)))
            file.write(header_bytes)
            file.write(np.concatenate(chunks).astype(BLOB_DTYPE).tobytes())
            file.flush()
            os.fsync(file.fileno())
        os.replace(tmp, path)
    except OSError as exc:
        raise CheckpointError.unreadable("save_checkpoint", path, str(exc))
    return header


def _split(blob: np.ndarray, header: CheckpointHeader) -> Dict[str, np.ndarray]:
    arrays: Dict[str, np.ndarray] = {}
    offset = 0
    for entry in header.parameters:
        size = int(np.prod(entry.shape, dtype=np.int64))
        arrays[entry.name] = blob[offset : offset + size].astype(np.float64).reshape(entry.shape)
        offset += size
    return arrays


def load_checkpoint(path: str) -> Checkpoint:
    if not os.path.isfile(path):
        raise CheckpointError.unreadable("load_checkpoint", path, "file does not exist")
    with open(path, "rb") as file:
        data = file.read()

    if data[: len(MAGIC)] != MAGIC:
        raise CheckpointError.unreadable("load_checkpoint", path, "not a checkpoint file")
    start = len(MAGIC) + _LENGTH.size
    if len(data) < start:
        raise CheckpointError.unreadable("load_checkpoint", path, "truncated header")
    (header_length,) = _LENGTH.unpack(data[len(MAGIC) : start])
    try:
        header = CheckpointHeader.model_validate_json(data[start : start + header_length])
    except (ValidationError, json.JSONDecodeError) as exc:
        raise CheckpointError.unreadable("load_checkpoint", path, f"invalid header: {exc}")
    if header.format_version != CHECKPOINT_FORMAT_VERSION:
        raise CheckpointError.unreadable(
            "load_checkpoint", path, f"unsupported format version {header.format_version}"
        )
    if [entry.name for entry in header.parameters] != PARAMETER_ORDER:
        raise CheckpointError.unreadable("load_checkpoint", path, "unexpected parameter order")

    blob = np.frombuffer(data[start + header_length :], dtype=BLOB_DTYPE)
    count = sum(int(np.prod(entry.shape, dtype=np.int64)) for entry in header.parameters)
    copies = 3 if header.optimizer_step is not None else 1
    if blob.size != count * copies:
        raise CheckpointError.unreadable(
            "load_checkpoint", path, f"blob holds {blob.size} values, expected {count * copies}"
        )

    try:
        params = RegressorParams.from_arrays(header.architecture, _split(blob[:count], header))
        adam_state = None
        if header.optimizer_step is not None:
            adam_state = AdamState(
                step=header.optimizer_step,
                first_moment=_split(blob[count : 2 * count], header),
                second_moment=_split(blob[2 * count :], header),
            )
    except ValueError as exc:
        raise CheckpointError.unreadable("load_checkpoint", path, str(exc))
    return Checkpoint(header=header, params=params, adam_state=adam_state)
