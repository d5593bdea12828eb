"""On-disk formats: state-set files and certificate files.

State sets are stored as plain JSON with every amplitude written as a
two-element [re, im] array at 17 significant digits, so a load/dump cycle is
byte-identical and verdicts survive serialization exactly.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .certifier import Certificate
from .tensor_core import ProductState, StateSet

__all__ = [
    "FORMAT_VERSION",
    "dumps_state_set",
    "dump_state_set",
    "loads_state_set",
    "load_state_set",
    "certificate_to_dict",
    "dumps_certificate",
    "dump_certificate",
]

FORMAT_VERSION = "nlops-1"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _state_line(state: ProductState, normalize: bool) -> str:
    parts = []
    for vec in state.factors:
        if normalize:
            vec = vec / np.linalg.norm(vec)
        parts.append(
            "[" + ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in vec) + "]"
        )
    return "[" + ", ".join(parts) + "]"


def dumps_state_set(state_set: StateSet, normalize: bool = False) -> str:
    """Serialize a state set; normalize divides each local vector by its norm."""
    lines = [
        "{",
        f'  "format_version": {json.dumps(FORMAT_VERSION)},',
        f'  "dims": {json.dumps(list(state_set.dims))},',
        f'  "label": {json.dumps(state_set.label)},',
        '  "states": [',
    ]
    last = len(state_set.states) - 1
    for idx, state in enumerate(state_set.states):
        comma = "," if idx < last else ""
        lines.append("    " + _state_line(state, normalize) + comma)
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_state_set(state_set: StateSet, path: str | os.PathLike, normalize: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_state_set(state_set, normalize))


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ValueError(f"malformed-file: {what}")


def loads_state_set(text: str) -> StateSet:
    """Parse and validate a serialized state set."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed-file: invalid JSON ({exc})") from exc
    _require(isinstance(doc, dict), "top level must be an object")
    _require(doc.get("format_version") == FORMAT_VERSION,
             f"format_version must be {FORMAT_VERSION!r}")
    dims = doc.get("dims")
    _require(isinstance(dims, list) and len(dims) >= 2, "dims must list >= 2 parties")
    _require(all(isinstance(d, int) and d >= 1 for d in dims),
             "dims must be positive integers")
    label = doc.get("label", "")
    _require(isinstance(label, str), "label must be a string")
    raw_states = doc.get("states")
    _require(isinstance(raw_states, list), "states must be an array")
    states = []
    for s_idx, raw in enumerate(raw_states):
        _require(isinstance(raw, list) and len(raw) == len(dims),
                 f"state {s_idx} must have one entry per party")
        factors = []
        for p_idx, (raw_vec, d) in enumerate(zip(raw, dims)):
            _require(isinstance(raw_vec, list) and len(raw_vec) == d,
                     f"state {s_idx} party {p_idx} must have {d} amplitudes")
            amps = []
            for pair in raw_vec:
                _require(
                    isinstance(pair, list) and len(pair) == 2
                    and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                            for v in pair),
                    f"state {s_idx} party {p_idx}: amplitudes must be [re, im] numbers",
                )
                amps.append(complex(pair[0], pair[1]))
            _require(all(np.isfinite(z.real) and np.isfinite(z.imag) for z in amps),
                     f"state {s_idx} party {p_idx}: amplitudes must be finite")
            factors.append(np.asarray(amps, dtype=np.complex128))
        try:
            states.append(ProductState(tuple(factors)))
        except ValueError as exc:
            raise ValueError(f"malformed-file: state {s_idx}: {exc}") from exc
    try:
        return StateSet(tuple(dims), tuple(states), label=label)
    except ValueError as exc:
        raise ValueError(f"malformed-file: {exc}") from exc


def load_state_set(path: str | os.PathLike) -> StateSet:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_state_set(fh.read())


def certificate_to_dict(cert: Certificate) -> dict:
    """Certificate as a JSON-ready dictionary."""
    parties = []
    for rep in cert.parties:
        entry = {
            "party": rep.party,
            "active_pairs": rep.active_pairs,
            "solution_dim": rep.solution_dim,
            "trivial": rep.trivial,
        }
        if rep.witness is not None:
            entry["witness"] = {
                "dim": rep.witness.dim,
                "coords": [float(c) for c in rep.witness.coords],
            }
        parties.append(entry)
    return {
        "format_version": FORMAT_VERSION,
        "label": cert.label,
        "dims": list(cert.dims),
        "tolerances": {
            "tol_rank": cert.tolerances.tol_rank,
            "tol_active": cert.tolerances.tol_active,
            "tol_orth": cert.tolerances.tol_orth,
        },
        "orthogonality": {
            "pass": cert.orthogonality.passed,
            "max_residual": cert.orthogonality.max_residual,
        },
        "parties": parties,
        "verdict": cert.verdict,
    }


def dumps_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def dump_certificate(cert: Certificate, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_certificate(cert))
