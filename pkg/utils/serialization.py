"""
Deterministic JSON encoding for reports.

Floats are rounded to 15 significant digits and keys are sorted so that
identical inputs and seeds give byte-identical files.
"""
import dataclasses
import json
import math
from enum import Enum
from typing import Any

import numpy as np

SIGNIFICANT_DIGITS = 15


def round_float(value: float) -> Any:
    """Round to 15 significant digits; non-finite values become strings."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    rounded = float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if rounded == 0 else rounded


def _key(key: Any) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, tuple):
        return ",".join(_key(k) for k in key)
    if isinstance(key, Enum):
        return str(key.value)
    return str(key)


def to_jsonable(obj: Any) -> Any:
    """
    Convert library values into plain JSON-compatible structures.

    Objects exposing ``to_dict()`` are asked to describe themselves;
    dataclasses without it are converted field by field.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return to_jsonable(obj.value)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": round_float(obj.real), "im": round_float(obj.imag)}
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": to_jsonable(obj.real.tolist()), "im": to_jsonable(obj.imag.tolist())}
        return to_jsonable(obj.tolist())
    if hasattr(obj, "to_dict") and callable(obj.to_dict):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    raise TypeError(f"cannot serialize object of type {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Serialize to a deterministic JSON string."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent, allow_nan=False)
