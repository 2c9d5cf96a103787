"""
Command schemas and input document parsers for nondisturb.

``COMMAND_SCHEMAS`` declares every subcommand with its parameters; the CLI
builds its argument parser from it. Required parameters become positional
arguments, the rest become ``--options``.

Input documents are JSON. A matrix is ``{"dim": d, "re": [[...]], "im": [[...]]}``
whose entries may be numbers or numeric strings such as ``"-sqrt(2)/4"``.
"""
import json
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from freeops import SUITE_KINDS
from measurement import Channel, Instrument, Povm, choi_from_kraus, lueders_instrument
from qmat import DensityMatrix, matrix_from_json, operator_from_json
from sequence import STATE_SETS, Scenario, Slot
from utils.errors import InputParseError, NondisturbError

DOCUMENT_TYPES = ("povm", "instrument", "channel", "scenario")
BUILTIN_SCENARIOS = ("two-time",)

# "positional" marks an optional parameter taken as a positional argument
COMMAND_SCHEMAS: List[Dict[str, Any]] = [
    {
        "name": "validate",
        "description": "Check positivity and completeness of a POVM, instrument or channel document.",
        "parameters": {
            "type": "object",
            "properties": {
                "input": {
                    "type": "string",
                    "description": "Path to the JSON document"
                },
                "kind": {
                    "type": "string",
                    "description": "Document type (auto reads the 'type' field or infers it)",
                    "enum": ["auto", "povm", "instrument", "channel"],
                    "default": "auto"
                }
            },
            "required": ["input"]
        }
    },
    {
        "name": "compat",
        "description": "Classify a pair of POVMs: commutation, nondisturbance both ways, joint measurability.",
        "parameters": {
            "type": "object",
            "properties": {
                "a": {"type": "string", "description": "POVM document A"},
                "b": {"type": "string", "description": "POVM document B"}
            },
            "required": ["a", "b"]
        }
    },
    {
        "name": "disturbance",
        "description": "Disturbance of B by A, minimized over instruments or for a given instrument of A.",
        "parameters": {
            "type": "object",
            "properties": {
                "a": {"type": "string", "description": "POVM document A (measured first)"},
                "b": {"type": "string", "description": "POVM document B"},
                "instrument": {
                    "type": "string",
                    "description": "Instrument document implementing A; skips the optimization"
                }
            },
            "required": ["a", "b"]
        }
    },
    {
        "name": "mr",
        "description": "Macrorealism measure summed over all orderings of two or more POVMs.",
        "parameters": {
            "type": "object",
            "properties": {
                "povms": {
                    "type": "array",
                    "description": "POVM documents, or one document with a 'povms' list"
                },
                "names": {
                    "type": "array",
                    "description": "Names used for the orderings in the report"
                }
            },
            "required": ["povms"]
        }
    },
    {
        "name": "nsit",
        "description": "Probability table, arrow-of-time and no-signaling-in-time conditions of a scenario.",
        "parameters": {
            "type": "object",
            "properties": {
                "scenario": {
                    "type": "string",
                    "description": "Scenario document, or 'two-time' for the built-in qubit scenario"
                },
                "initial": {
                    "type": "string",
                    "description": "Initial state of the built-in scenario",
                    "enum": ["x", "z"],
                    "default": "x"
                },
                "measure_prepare": {
                    "type": "boolean",
                    "description": "Built-in scenario: first measurement re-prepares |+x>",
                    "default": False
                },
                "explicit_evolution": {
                    "type": "boolean",
                    "description": "Built-in scenario: measure sigma_z twice with a rotation in between",
                    "default": False
                },
                "reduced": {
                    "type": "boolean",
                    "description": "Only check the reduced set of NSIT conditions",
                    "default": False
                },
                "state_set": {
                    "type": "string",
                    "description": "States reaching the middle slot in the time-dependent check",
                    "enum": list(STATE_SETS),
                    "default": "full"
                }
            },
            "required": ["scenario"]
        }
    },
    {
        "name": "catalog",
        "description": "List the built-in constructions or verify their claims.",
        "parameters": {
            "type": "object",
            "properties": {
                "verb": {
                    "type": "string",
                    "description": "Action",
                    "enum": ["list", "verify"]
                },
                "entry_id": {
                    "type": "string",
                    "description": "Entry to verify (all entries when omitted)",
                    "positional": True
                },
                "param": {
                    "type": "array",
                    "description": "Entry parameters as KEY=VALUE, e.g. d=7"
                }
            },
            "required": ["verb"]
        }
    },
    {
        "name": "freeops",
        "description": "Randomized monotonicity suite for one kind of free operation.",
        "parameters": {
            "type": "object",
            "properties": {
                "suite": {
                    "type": "string",
                    "description": "Free operation under test",
                    "enum": list(SUITE_KINDS)
                },
                "trials": {"type": "integer", "description": "Number of random instances", "default": 20},
                "dim": {"type": "integer", "description": "Hilbert-space dimension", "default": 2},
                "povm_count": {"type": "integer", "description": "POVMs per instance (2 or 3)", "default": 2},
                "outcomes": {"type": "integer", "description": "Outcomes per random POVM", "default": 2}
            },
            "required": ["suite"]
        }
    },
    {
        "name": "hierarchy",
        "description": "Check commuting => nondisturbing => jointly measurable on random pairs.",
        "parameters": {
            "type": "object",
            "properties": {
                "dim": {"type": "integer", "description": "Hilbert-space dimension", "default": 2},
                "trials": {"type": "integer", "description": "Number of random pairs", "default": 50},
                "outcomes": {"type": "integer", "description": "Outcomes per random POVM", "default": 2}
            },
            "required": []
        }
    },
    {
        "name": "history",
        "description": "List archived runs, most recent first.",
        "parameters": {
            "type": "object",
            "properties": {
                "command": {"type": "string", "description": "Only runs of this command"},
                "limit": {"type": "integer", "description": "Maximum number of runs", "default": 20}
            },
            "required": []
        }
    },
]


def get_schema(name: str) -> Optional[Dict[str, Any]]:
    for schema in COMMAND_SCHEMAS:
        if schema["name"] == name:
            return schema
    return None


def load_document(path: str) -> Any:
    """
    Read a JSON document.

    Raises:
        InputParseError: If the file is missing or not valid JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputParseError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise InputParseError(f"invalid JSON in {path}: {e.msg} (line {e.lineno}, column {e.colno})")


def _wrapped(location: str, build: Callable[[], Any]) -> Any:
    """Run a constructor, reporting library errors against ``location``."""
    try:
        return build()
    except InputParseError:
        raise
    except (NondisturbError, ValueError) as e:
        raise InputParseError(str(e), location)


def _field(doc: Any, key: str, location: str) -> Any:
    if not isinstance(doc, dict):
        raise InputParseError("expected an object", location)
    if key not in doc:
        raise InputParseError(f"missing '{key}'", location)
    return doc[key]


def _list(value: Any, location: str, min_len: int = 1) -> List[Any]:
    if not isinstance(value, list):
        raise InputParseError("expected a list", location)
    if len(value) < min_len:
        raise InputParseError(f"expected at least {min_len} item(s)", location)
    return value


def _labels(doc: Dict[str, Any], count: int, location: str) -> Optional[tuple]:
    raw = doc.get("labels")
    if raw is None:
        return None
    raw = _list(raw, f"{location}.labels")
    if len(raw) != count:
        raise InputParseError(f"{len(raw)} labels for {count} outcomes", f"{location}.labels")
    for i, label in enumerate(raw):
        if not isinstance(label, (int, str)) or isinstance(label, bool):
            raise InputParseError("labels must be integers or strings", f"{location}.labels[{i}]")
    return tuple(raw)


def _picture(doc: Dict[str, Any], location: str) -> str:
    picture = doc.get("picture", "schroedinger")
    if picture not in ("schroedinger", "heisenberg"):
        raise InputParseError(f"unknown picture {picture!r}", f"{location}.picture")
    return picture


def _kraus_group(raw: Any, location: str, picture: str) -> List[np.ndarray]:
    ops = [operator_from_json(op, f"{location}[{k}]") for k, op in enumerate(_list(raw, location))]
    if picture == "heisenberg":
        ops = [op.conj().T for op in ops]
    return ops


def parse_povm(doc: Any, location: str = "$") -> Povm:
    """``{"elements": [matrix, ...], "labels": [...]}``; positivity is left to ``validate_povm``."""
    elements = _list(_field(doc, "elements", location), f"{location}.elements")
    mats = [matrix_from_json(e, f"{location}.elements[{i}]") for i, e in enumerate(elements)]
    labels = _labels(doc, len(mats), location)
    return _wrapped(location, lambda: Povm(mats, labels))


def parse_povm_list(doc: Any, location: str = "$") -> List[Povm]:
    """``{"povms": [povm, ...]}``."""
    povms = _list(_field(doc, "povms", location), f"{location}.povms", min_len=2)
    return [parse_povm(p, f"{location}.povms[{i}]") for i, p in enumerate(povms)]


def parse_instrument(doc: Any, location: str = "$") -> Instrument:
    """
    Instrument from per-outcome Choi matrices or Kraus lists.

    ``{"choi": [matrix, ...]}`` or ``{"kraus": [[op, ...], ...], "picture": ...}``,
    each with optional ``labels``. Heisenberg-picture Kraus operators are
    conjugate-transposed. Completeness is not enforced here for either form;
    ``validate_instrument`` and the consumers of the instrument check it.
    """
    if not isinstance(doc, dict):
        raise InputParseError("expected an object", location)
    if "choi" in doc:
        chois = [matrix_from_json(c, f"{location}.choi[{i}]")
                 for i, c in enumerate(_list(doc["choi"], f"{location}.choi"))]
        labels = _labels(doc, len(chois), location)
        return _wrapped(location, lambda: Instrument(chois, labels))
    if "kraus" in doc:
        picture = _picture(doc, location)
        groups = [_kraus_group(g, f"{location}.kraus[{i}]", picture)
                  for i, g in enumerate(_list(doc["kraus"], f"{location}.kraus"))]
        labels = _labels(doc, len(groups), location)
        return _wrapped(location, lambda: Instrument([choi_from_kraus(g) for g in groups], labels, kraus=groups))
    raise InputParseError("instrument needs 'choi' or 'kraus'", location)


def parse_channel(doc: Any, location: str = "$") -> Channel:
    """``{"choi": matrix}`` or ``{"kraus": [op, ...], "picture": ...}``."""
    if not isinstance(doc, dict):
        raise InputParseError("expected an object", location)
    if "choi" in doc:
        choi = matrix_from_json(doc["choi"], f"{location}.choi")
        return _wrapped(location, lambda: Channel(choi))
    if "kraus" in doc:
        ops = _kraus_group(doc["kraus"], f"{location}.kraus", _picture(doc, location))
        return _wrapped(location, lambda: Channel.from_kraus(ops))
    raise InputParseError("channel needs 'choi' or 'kraus'", location)


def parse_scenario(doc: Any, location: str = "$") -> Scenario:
    """
    ``{"state": matrix, "slots": [{"povm": ..., "instrument": ...}, ...], "evolutions": [...]}``.

    Slots without an instrument use the Lueders instrument; ``null``
    evolutions mean no evolution between the two slots.
    """
    state_mat = matrix_from_json(_field(doc, "state", location), f"{location}.state")
    state = _wrapped(f"{location}.state", lambda: DensityMatrix(state_mat.data, subnormalized=True))
    slots = []
    for i, raw in enumerate(_list(_field(doc, "slots", location), f"{location}.slots")):
        where = f"{location}.slots[{i}]"
        povm = parse_povm(_field(raw, "povm", where), f"{where}.povm")
        if raw.get("instrument") is not None:
            instrument = parse_instrument(raw["instrument"], f"{where}.instrument")
        else:
            instrument = _wrapped(where, lambda: lueders_instrument(povm))
        slots.append(Slot(povm, instrument))
    evolutions = None
    if doc.get("evolutions") is not None:
        raw_evolutions = _list(doc["evolutions"], f"{location}.evolutions", min_len=0)
        evolutions = [None if e is None else parse_channel(e, f"{location}.evolutions[{i}]")
                      for i, e in enumerate(raw_evolutions)]
    return _wrapped(location, lambda: Scenario(slots, state, evolutions))


_DOCUMENT_PARSERS = {
    "povm": parse_povm,
    "instrument": parse_instrument,
    "channel": parse_channel,
    "scenario": parse_scenario,
}


def document_kind(doc: Any, kind: str = "auto") -> str:
    """Resolve ``auto`` from the ``type`` field or from the keys present."""
    if kind != "auto":
        return kind
    if not isinstance(doc, dict):
        raise InputParseError("expected an object")
    declared = doc.get("type")
    if declared is not None:
        if declared not in DOCUMENT_TYPES:
            raise InputParseError(f"unknown document type {declared!r}", "$.type")
        return declared
    if "elements" in doc:
        return "povm"
    if "slots" in doc:
        return "scenario"
    if isinstance(doc.get("choi"), list):
        return "instrument"
    if isinstance(doc.get("choi"), dict):
        return "channel"
    kraus = doc.get("kraus")
    if isinstance(kraus, list) and kraus:
        return "instrument" if isinstance(kraus[0], list) else "channel"
    raise InputParseError("cannot infer the document type; add a 'type' field")


def parse_document(doc: Any, kind: str = "auto") -> Any:
    kind = document_kind(doc, kind)
    return _DOCUMENT_PARSERS[kind](doc)


def parse_params(items: Optional[Sequence[str]]) -> Dict[str, Any]:
    """``["d=7", "s=0.01"]`` -> ``{"d": 7, "s": 0.01}``; non-JSON values stay strings."""
    params: Dict[str, Any] = {}
    for i, item in enumerate(items or []):
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise InputParseError(f"expected KEY=VALUE, got {item!r}", f"--param[{i}]")
        try:
            params[key.strip()] = json.loads(value)
        except json.JSONDecodeError:
            params[key.strip()] = value
    return params
