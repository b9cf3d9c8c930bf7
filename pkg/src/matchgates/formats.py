"""JSON formats for circuits and circuit jobs.

Circuit file::

    {"n": 3,
     "gates": [{"kind": "G", "lines": [0, 1], "A": [[[re, im], [re, im]], [...]], "B": [...]},
               {"kind": "named", "name": "SWAP", "lines": [1, 2]}],
     "input": [[re0, im0, re1, im1], ...],   # optional, default all |0>
     "measure": 0}                           # optional line index

``kind: "G"`` insists on det A = det B; ``"Gtilde"`` accepts either.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from matchgates.circuits import Circuit, MatchGate, make_gate, named_gate
from matchgates.errors import ValidationError
from matchgates.pauli import ProductState


def _complex_matrix(data, where: str) -> np.ndarray:
    try:
        return np.array([[complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e) for e in row] for row in data])
    except (TypeError, ValueError, IndexError) as exc:
        raise ValidationError(f"{where}: malformed complex matrix ({exc})") from None


def _matrix_json(m: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m, dtype=complex)]


def gate_from_json(data: dict, where: str = "gate") -> MatchGate:
    kind = data.get("kind")
    if "lines" not in data or len(data["lines"]) != 2:
        raise ValidationError(f"{where}: 'lines' must be a pair")
    lines = tuple(int(v) for v in data["lines"])
    try:
        if kind == "named":
            return named_gate(str(data["name"]), lines)
        if kind in ("G", "Gtilde"):
            g = make_gate(_complex_matrix(data["A"], where), _complex_matrix(data["B"], where), lines)
            if kind == "G" and not g.allowed:
                raise ValidationError("det A != det B for a gate declared as kind 'G'")
            return g
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    except KeyError as exc:
        raise ValidationError(f"{where}: missing field {exc}") from None
    raise ValidationError(f"{where}: unknown gate kind {kind!r}")


def gate_to_json(g: MatchGate) -> dict:
    return {"kind": g.kind, "lines": list(g.lines), "A": _matrix_json(g.a), "B": _matrix_json(g.b)}


def circuit_from_json(data: dict | str) -> Circuit:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    gates = tuple(gate_from_json(g, f"gate {i}") for i, g in enumerate(data.get("gates", [])))
    return Circuit(n, gates, str(data.get("name", "")), str(data.get("description", "")))


def circuit_to_json(c: Circuit) -> dict:
    out = {"n": c.n, "gates": [gate_to_json(g) for g in c.gates]}
    if c.name:
        out["name"] = c.name
    return out


def state_from_json(rows, n: int) -> ProductState:
    if len(rows) != n:
        raise ValidationError(f"input has {len(rows)} factors, circuit has {n} lines")
    factors = [[complex(r[0], r[1]), complex(r[2], r[3])] for r in rows]
    return ProductState(factors, atol=1e-9)


def state_to_json(s: ProductState) -> list:
    return [[float(a.real), float(a.imag), float(b.real), float(b.imag)] for a, b in s.factors]


@dataclass(frozen=True)
class CircuitJob:
    circuit: Circuit
    state: ProductState
    measure: int | None = None


def job_from_json(data: dict | str) -> CircuitJob:
    if isinstance(data, str):
        data = json.loads(data)
    c = circuit_from_json(data)
    s = state_from_json(data["input"], c.n) if data.get("input") is not None else ProductState.zeros(c.n)
    measure = data.get("measure")
    return CircuitJob(c, s, None if measure is None else int(measure))


def job_to_json(job: CircuitJob) -> dict:
    out = circuit_to_json(job.circuit)
    out["input"] = state_to_json(job.state)
    if job.measure is not None:
        out["measure"] = job.measure
    return out


def load_json(path: str | Path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: line {exc.lineno}: {exc.msg}") from None
