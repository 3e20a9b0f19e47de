"""Scenario file parsing and canonical dumping.

The on-disk format is JSON with every complex entry written as a [re, im]
pair.  The state can be given as an explicit density matrix, a Bloch
vector, or a pure-state amplitude vector; dumps always resolve the state to
an explicit density matrix so a dumped file round-trips to a bit-identical
scenario regardless of how the original state was specified.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import ScenarioParseError, SkewboundsError
from .metric import DensityMatrix, bloch_state, pure_state, validate_density, validate_observable
from .scenarios import Scenario, fixed_scenario

_STATE_KINDS = ("density", "bloch", "pure")


def _fail(path: str, message: str) -> ScenarioParseError:
    return ScenarioParseError(f"{path}: {message}")


def _complex_entry(node: Any, path: str) -> complex:
    if not (isinstance(node, list) and len(node) == 2):
        raise _fail(path, f"expected a [re, im] pair, got {node!r}")
    re_part, im_part = node
    if not isinstance(re_part, (int, float)) or not isinstance(im_part, (int, float)):
        raise _fail(path, f"expected numeric [re, im], got {node!r}")
    return complex(float(re_part), float(im_part))


def _complex_matrix(node: Any, dim: int, path: str) -> np.ndarray:
    if not (isinstance(node, list) and len(node) == dim):
        raise _fail(path, f"expected {dim} rows, got {type(node).__name__} of length {len(node) if isinstance(node, list) else 'n/a'}")
    out = np.zeros((dim, dim), dtype=np.complex128)
    for i, row in enumerate(node):
        if not (isinstance(row, list) and len(row) == dim):
            raise _fail(f"{path}[{i}]", f"expected {dim} entries")
        for j, cell in enumerate(row):
            out[i, j] = _complex_entry(cell, f"{path}[{i}][{j}]")
    return out


def _number(node: Any, path: str) -> float:
    if not isinstance(node, (int, float)) or isinstance(node, bool):
        raise _fail(path, f"expected a number, got {node!r}")
    return float(node)


def _parse_state(node: Any, dim: int) -> DensityMatrix:
    if not isinstance(node, dict):
        raise _fail("state", "expected an object")
    kind = node.get("kind")
    if kind not in _STATE_KINDS:
        raise _fail("state.kind", f"expected one of {_STATE_KINDS}, got {kind!r}")
    try:
        if kind == "density":
            return validate_density(_complex_matrix(node.get("matrix"), dim, "state.matrix"))
        if kind == "bloch":
            r = node.get("r")
            if not (isinstance(r, list) and len(r) == 3):
                raise _fail("state.r", "expected three real components")
            if dim != 2:
                raise _fail("state", f"bloch states require dimension 2, file says {dim}")
            return bloch_state([_number(v, f"state.r[{i}]") for i, v in enumerate(r)])
        amps = node.get("amplitudes")
        if not (isinstance(amps, list) and len(amps) == dim):
            raise _fail("state.amplitudes", f"expected {dim} [re, im] pairs")
        return pure_state([_complex_entry(a, f"state.amplitudes[{i}]") for i, a in enumerate(amps)])
    except ScenarioParseError:
        raise
    except (SkewboundsError, ValueError) as exc:
        raise _fail("state", str(exc)) from exc


def parse_scenario(text: str, label: str = "scenario") -> Scenario:
    """Parse and validate a scenario JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise _fail("$", "top level must be an object")
    dim_raw = doc.get("dimension")
    if not isinstance(dim_raw, int) or dim_raw < 2:
        raise _fail("dimension", f"expected an integer >= 2, got {dim_raw!r}")
    dim = int(dim_raw)
    p = _number(doc.get("p"), "p")
    state = _parse_state(doc.get("state"), dim)
    obs_node = doc.get("observables")
    if not (isinstance(obs_node, list) and len(obs_node) >= 1):
        raise _fail("observables", "expected a nonempty list")
    observables = []
    for i, entry in enumerate(obs_node):
        if not isinstance(entry, dict):
            raise _fail(f"observables[{i}]", "expected an object")
        name = entry.get("name", f"A{i + 1}")
        if not isinstance(name, str):
            raise _fail(f"observables[{i}].name", f"expected a string, got {name!r}")
        matrix = _complex_matrix(entry.get("matrix"), dim, f"observables[{i}].matrix")
        try:
            observables.append(validate_observable(matrix, name))
        except (SkewboundsError, ValueError) as exc:
            raise _fail(f"observables[{i}].matrix", str(exc)) from exc
    try:
        return fixed_scenario(doc.get("label", label), state, p, observables)
    except (SkewboundsError, ValueError) as exc:
        raise ScenarioParseError(str(exc)) from exc


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_scenario(text, label=path)


def _encode_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _encode_matrix(m: np.ndarray) -> list[list[list[float]]]:
    return [[_encode_complex(complex(v)) for v in row] for row in np.asarray(m)]


def dump_scenario(scenario: Scenario, theta: float = 0.0) -> str:
    """Canonical JSON for the scenario with its state resolved at theta."""
    state = scenario.state_at(theta)
    doc = {
        "label": scenario.label,
        "dimension": scenario.dim,
        "p": scenario.p.p,
        "state": {"kind": "density", "matrix": _encode_matrix(state.matrix)},
        "observables": [
            {"name": obs.name, "matrix": _encode_matrix(obs.matrix)} for obs in scenario.observables
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
