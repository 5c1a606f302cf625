"""JSON documents for behaviours, witnesses, strategies and quantum models.

Behaviour and witness files look like::

    {"nx": 2, "ny": 1, "nb": 2, "p": [[1, 0], [0, 1]]}

with ``g`` in place of ``p`` for witnesses. Row ``x`` holds ``ny*nb``
numbers, column ``y*nb + b``. Floats are written with 17 significant
digits so files reload bit-identically.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .behaviour import Behaviour, Scenario, Witness, validate_behaviour
from .classical import DeterministicStrategy
from .errors import ValidationError
from .quantum import QuantumModel

PathLike = str | Path


def _fmt(v: float) -> str:
    v = float(v)
    if not math.isfinite(v):
        raise ValidationError(f"cannot serialize non-finite value {v!r}")
    s = format(v, ".17g")
    if s == "-0":
        s = "0"
    return s


def _dump_nested(obj: Any) -> str:
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump_nested(o) for o in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    return json.dumps(obj)


def dumps(doc: dict) -> str:
    """Serialize a flat dict of scalars and nested numeric lists, one top-level key per line."""
    lines = []
    for key, value in doc.items():
        if isinstance(value, (list, tuple)) and value and isinstance(value[0], (list, tuple)):
            inner = ",\n    ".join(_dump_nested(v) for v in value)
            lines.append(f"  {json.dumps(key)}: [\n    {inner}\n  ]")
        else:
            lines.append(f"  {json.dumps(key)}: {_dump_nested(value)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _matrix_doc(scenario: Scenario, matrix: np.ndarray, key: str) -> dict:
    rows = [[float(v) for v in row] for row in np.asarray(matrix, dtype=float)]
    return {"nx": scenario.nx, "ny": scenario.ny, "nb": scenario.nb, key: rows}


def behaviour_to_text(P: Behaviour) -> str:
    return dumps(_matrix_doc(P.scenario, P.matrix, "p"))


def witness_to_text(G: Witness) -> str:
    return dumps(_matrix_doc(G.scenario, G.matrix, "g"))


def _read(path: PathLike) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top-level value must be an object")
    return doc


def _scenario_of(doc: dict, path) -> Scenario:
    try:
        return Scenario(doc["nx"], doc["ny"], doc["nb"])
    except KeyError as exc:
        raise ValidationError(f"{path}: missing field {exc}") from None


def _table(doc: dict, scenario: Scenario, key: str, path) -> np.ndarray:
    if key not in doc:
        raise ValidationError(f"{path}: missing field {key!r}")
    rows = doc[key]
    if not isinstance(rows, list) or len(rows) != scenario.nx:
        raise ValidationError(f"{path}: {key!r} must be a list of nx = {scenario.nx} rows")
    width = scenario.ny * scenario.nb
    for x, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise ValidationError(f"{path}: row {x} of {key!r} must have ny*nb = {width} numbers")
    try:
        return np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: non-numeric entries in {key!r}: {exc}") from None


def behaviour_from_dict(doc: dict, path: str = "<document>") -> Behaviour:
    s = _scenario_of(doc, path)
    return validate_behaviour(s, _table(doc, s, "p", path))


def witness_from_dict(doc: dict, path: str = "<document>") -> Witness:
    s = _scenario_of(doc, path)
    return Witness(s, _table(doc, s, "g", path))


def load_behaviour(path: PathLike) -> Behaviour:
    return behaviour_from_dict(_read(path), str(path))


def load_witness(path: PathLike) -> Witness:
    return witness_from_dict(_read(path), str(path))


def save_behaviour(P: Behaviour, path: PathLike) -> None:
    Path(path).write_text(behaviour_to_text(P))


def save_witness(G: Witness, path: PathLike) -> None:
    Path(path).write_text(witness_to_text(G))


def save_matrix(matrix: np.ndarray, scenario: Scenario, path: PathLike) -> None:
    """Write a bare matrix (index matrix, isometry) using the witness layout."""
    Path(path).write_text(dumps(_matrix_doc(scenario, matrix, "g")))


def load_strategy(path: PathLike) -> DeterministicStrategy:
    return DeterministicStrategy.from_dict(_read(path))


def save_strategy(s: DeterministicStrategy, path: PathLike) -> None:
    Path(path).write_text(dumps(s.to_dict()))


def load_model(path: PathLike) -> QuantumModel:
    return QuantumModel.from_dict(_read(path))


def model_to_text(model: QuantumModel) -> str:
    doc = model.to_dict()
    body = ",\n".join(
        [
            f'  "dim": {doc["dim"]}',
            '  "states": ' + _dump_nested(doc["states"]),
            '  "povms": ' + _dump_nested(doc["povms"]),
        ]
    )
    return "{\n" + body + "\n}\n"


def save_model(model: QuantumModel, path: PathLike) -> None:
    Path(path).write_text(model_to_text(model))
