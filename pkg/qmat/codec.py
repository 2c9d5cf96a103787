"""
JSON encoding of matrices: ``{"dim": n, "re": [[..]], "im": [[..]]}``.

Entries may be numbers or exact strings such as ``"1/3"`` or
``"-sqrt(10)/10"``; strings are evaluated with sympy after a whitelist check
so that only numeric expressions are accepted.
"""
import re
from typing import Any, Dict, List

import numpy as np
import sympy

from utils.errors import HermiticityError, InputParseError

from .hermitian import HermMatrix

_ALLOWED_WORDS = re.compile(r"sqrt|pi|I")
_ALLOWED_REST = re.compile(r"^[0-9eE+\-*/(). ]*$")


def parse_scalar(value: Any, location: str = "$") -> complex:
    """
    Parse a JSON scalar into a finite complex number.

    Args:
        value: int, float or numeric expression string
        location: JSON path used in error messages

    Returns:
        Parsed value
    """
    if isinstance(value, bool):
        raise InputParseError("booleans are not numbers", location)
    if isinstance(value, (int, float)):
        result = complex(value)
    elif isinstance(value, str):
        text = value.strip()
        if not text or not _ALLOWED_REST.match(_ALLOWED_WORDS.sub("", text)):
            raise InputParseError(f"invalid numeric literal {value!r}", location)
        try:
            expr = sympy.sympify(text)
        except (sympy.SympifyError, SyntaxError, TypeError) as e:
            raise InputParseError(f"invalid numeric literal {value!r}: {e}", location)
        if expr.free_symbols:
            raise InputParseError(f"literal {value!r} contains symbols", location)
        result = complex(sympy.N(expr, 20))
    else:
        raise InputParseError(f"expected a number, got {type(value).__name__}", location)
    if not (np.isfinite(result.real) and np.isfinite(result.imag)):
        raise InputParseError(f"non-finite value {value!r}", location)
    return result


def _parse_grid(rows: Any, dim: int, location: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise InputParseError(f"expected {dim} rows", location)
    out = np.zeros((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InputParseError(f"expected {dim} entries", f"{location}[{i}]")
        for j, entry in enumerate(row):
            out[i, j] = parse_scalar(entry, f"{location}[{i}][{j}]")
    return out


def operator_from_json(doc: Any, location: str = "$") -> np.ndarray:
    """Decode a general square complex matrix (e.g. a Kraus operator)."""
    if not isinstance(doc, dict):
        raise InputParseError("matrix must be an object with dim/re/im", location)
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputParseError("'dim' must be a positive integer", f"{location}.dim")
    if "re" not in doc:
        raise InputParseError("missing 're'", location)
    real = _parse_grid(doc["re"], dim, f"{location}.re")
    imag = _parse_grid(doc["im"], dim, f"{location}.im") if doc.get("im") is not None else 0.0
    # complex literals in 're' (e.g. "I/2") are allowed
    return real + 1j * imag


def matrix_from_json(doc: Any, location: str = "$") -> HermMatrix:
    """
    Decode a Hermitian matrix.

    Args:
        doc: Mapping with ``dim``, ``re`` and optional ``im``
        location: JSON path of ``doc``

    Returns:
        HermMatrix
    """
    data = operator_from_json(doc, location)
    try:
        return HermMatrix(data)
    except HermiticityError as e:
        raise InputParseError(str(e), location)


def matrix_to_json(m: HermMatrix) -> Dict[str, Any]:
    """Inverse of ``matrix_from_json`` (floats, no exact literals)."""
    re_rows: List[List[float]] = m.re.tolist()
    im_rows: List[List[float]] = m.im.tolist()
    return {"dim": m.dim, "re": re_rows, "im": im_rows}
