"""JSON and CSV formats.

Matrix JSON::

    {"dim": n, "entries": [[re, im], ...]}        # n*n pairs, row-major

Rectangular matrices (Kraus operators between different dimensions) use
``"rows"`` and ``"cols"`` instead of ``"dim"``.  Channels are
``{"din": .., "dout": .., "kraus": [matrix, ...]}``.  NaN and infinities
are rejected everywhere.
"""
from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path

import numpy as np

from .channels import QuantumChannel
from .errors import ParseError
from .states import density_from_matrix, perturbation_from_matrix


def fmt(x: float) -> str:
    """17 significant digits; ``inf`` for infinities."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name} is not allowed")


def parse_json(text: str, source: str = "<string>"):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from exc


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc.strerror}") from exc
    return parse_json(text, str(path))


def _positive_int(obj: dict, key: str, where: str) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ParseError(f"{where}.{key}: expected a positive integer, got {value!r}")
    return value


def matrix_to_json(M) -> dict:
    A = np.asarray(M, dtype=complex)
    entries = [[float(z.real), float(z.imag)] for z in A.ravel()]
    if A.shape[0] == A.shape[1]:
        return {"dim": int(A.shape[0]), "entries": entries}
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]), "entries": entries}


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    if "dim" in obj:
        rows = cols = _positive_int(obj, "dim", where)
    else:
        rows = _positive_int(obj, "rows", where)
        cols = _positive_int(obj, "cols", where)
    entries = obj.get("entries")
    if not isinstance(entries, list):
        raise ParseError(f"{where}.entries: expected a list")
    if len(entries) != rows * cols:
        raise ParseError(f"{where}.entries: expected {rows * cols} entries, got {len(entries)}")
    values = np.empty(rows * cols, dtype=complex)
    for k, pair in enumerate(entries):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise ParseError(f"{where}.entries[{k}]: expected a [re, im] pair of numbers, got {pair!r}")
        if not all(math.isfinite(x) for x in pair):
            raise ParseError(f"{where}.entries[{k}]: non-finite value {pair!r}")
        values[k] = complex(pair[0], pair[1])
    return values.reshape(rows, cols)


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(load_json(path), str(path))


def load_density(path) -> np.ndarray:
    return density_from_matrix(load_matrix(path))


def load_perturbation(path) -> np.ndarray:
    return perturbation_from_matrix(load_matrix(path))


def channel_to_json(channel: QuantumChannel) -> dict:
    return {"din": channel.din, "dout": channel.dout,
            "kraus": [matrix_to_json(K) for K in channel.kraus]}


def channel_from_json(obj, where: str = "channel") -> QuantumChannel:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    din = _positive_int(obj, "din", where)
    dout = _positive_int(obj, "dout", where)
    kraus = obj.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise ParseError(f"{where}.kraus: expected a non-empty list")
    ops = tuple(matrix_from_json(K, f"{where}.kraus[{k}]") for k, K in enumerate(kraus))
    return QuantumChannel(ops, din=din, dout=dout)


def load_channel(path) -> QuantumChannel:
    return channel_from_json(load_json(path), str(path))


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, allow_nan=False) + "\n")


def write_scan_csv(result, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "p_err", "rate", "theorem1_bound"])
    for row in result.rows:
        writer.writerow([row.n, fmt(row.p_err), fmt(row.rate), fmt(row.theorem1_bound)])


def write_sscan_csv(points, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["s", "q_s"])
    for s, q in points:
        writer.writerow([fmt(s), fmt(q)])


def write_replay(record: dict, directory) -> Path:
    os.makedirs(directory, exist_ok=True)
    path = Path(directory) / f"{record['check_name']}-d{record['dim']}-s{record['seed']}-t{record['trial_index']}.json"
    dump_json(record, path)
    return path


def load_replay(path) -> dict:
    record = load_json(path)
    for key in ("check_name", "seed", "dim", "trial_index", "inputs"):
        if not isinstance(record, dict) or key not in record:
            raise ParseError(f"{path}: replay file lacks {key!r}")
    return record
