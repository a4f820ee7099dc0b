"""File formats for generators and reports."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError

__all__ = [
    "SCHEMA",
    "dump_json",
    "load_generator",
    "pairs_from_complex",
    "spectrum_csv",
    "values_csv",
]

SCHEMA = "frame-lab/1"


def load_generator(path) -> np.ndarray:
    """Read a complex vector from a JSON or CSV generator file.

    JSON files carry {"dim": n, "values": [[re, im], ...]}; CSV files carry
    one `re,im` pair per line.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read generator file {path}: {exc}") from exc
    stripped = text.lstrip()
    if path.suffix.lower() == ".json" or stripped.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"generator file {path} is not valid JSON") from exc
        if not isinstance(payload, dict) or "values" not in payload:
            raise ParseError(f"generator file {path} lacks a 'values' field")
        values = payload["values"]
        try:
            arr = np.asarray(
                [complex(float(re), float(im)) for re, im in values],
                dtype=np.complex128,
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(
                f"generator file {path} values must be [re, im] pairs"
            ) from exc
        if arr.shape[0] == 0:
            raise ParseError(f"generator file {path} holds no values")
        dim = payload.get("dim")
        if dim is not None and int(dim) != arr.shape[0]:
            raise ParseError(
                f"generator file {path} says dim={dim} but holds {arr.shape[0]} values"
            )
        return arr
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(
                f"generator file {path} line {line_no}: expected 're,im'"
            )
        try:
            rows.append(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ParseError(
                f"generator file {path} line {line_no}: bad number"
            ) from exc
    if not rows:
        raise ParseError(f"generator file {path} holds no values")
    return np.asarray(rows, dtype=np.complex128)


def pairs_from_complex(values: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def values_csv(values: np.ndarray) -> str:
    """Complex values as CSV with the exact header index,re,im."""
    lines = ["index,re,im"]
    for i, v in enumerate(values):
        lines.append(f"{i},{float(v.real)!r},{float(v.imag)!r}")
    return "\n".join(lines) + "\n"


def spectrum_csv(values: np.ndarray) -> str:
    """Real spectrum as CSV with the exact header eig_index,value."""
    lines = ["eig_index,value"]
    for i, v in enumerate(values):
        lines.append(f"{i},{float(v)!r}")
    return "\n".join(lines) + "\n"


def dump_json(payload: dict) -> str:
    """Canonical JSON rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
