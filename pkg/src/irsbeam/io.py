"""File formats: pattern series, codebook trees, rate sweeps and training traces.

1-D series are CSV, trees and traces are JSON.  Floats are written with
``repr`` (shortest round-trip form), so a file re-read and re-written is
byte-identical.  CSV files start with ``# key=value`` comment lines holding
the generating configuration.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence, TextIO

import numpy as np

from .array_factor import PhaseProfile
from .codebook import Codeword, HierarchicalCodebook
from .training import TrainingOutcome, TrainingStep

PATTERN_COLUMNS = ("beta", "afm_norm")


def fmt(x) -> str:
    return repr(float(x))


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def dumps_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=1, allow_nan=True) + "\n"


def _config_lines(config: dict) -> str:
    return "".join(f"# {k}={json.dumps(_jsonable(v))}\n" for k, v in config.items())


def _split_comments(text: str) -> tuple[dict, str]:
    config, body = {}, []
    for line in text.splitlines(keepends=True):
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            config[key] = json.loads(value)
        else:
            body.append(line)
    return config, "".join(body)


def write_csv(fh: TextIO, columns: Sequence[str], rows: Iterable[Sequence],
              config: dict | None = None) -> None:
    if config:
        fh.write(_config_lines(config))
    fh.write(",".join(columns) + "\n")
    for row in rows:
        fh.write(",".join(str(v) if isinstance(v, (int, np.integer)) else fmt(v)
                          for v in row) + "\n")


def read_csv(text: str) -> tuple[dict, list[str], list[list[float]]]:
    """Parse a CSV written by :func:`write_csv` into ``(config, columns, rows)``."""
    config, body = _split_comments(text)
    reader = csv.reader(io.StringIO(body))
    columns = next(reader)
    rows = [[int(v) if v.lstrip("-").isdigit() else float(v) for v in row]
            for row in reader if row]
    return config, columns, rows


def pattern_csv(beta, values, config: dict | None = None) -> str:
    buf = io.StringIO()
    write_csv(buf, PATTERN_COLUMNS, zip(beta, values), config)
    return buf.getvalue()


def pattern_json(beta, values, config: dict | None = None) -> str:
    return dumps_json({
        "config": config or {},
        "samples": [{"beta": float(b), "afm_norm": float(v)} for b, v in zip(beta, values)],
    })


def read_pattern(text: str) -> tuple[dict, np.ndarray, np.ndarray]:
    """Read a pattern file in either format; returns ``(config, beta, afm_norm)``."""
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        samples = doc["samples"]
        return (doc.get("config", {}),
                np.array([s["beta"] for s in samples]),
                np.array([s["afm_norm"] for s in samples]))
    config, columns, rows = read_csv(text)
    if tuple(columns) != PATTERN_COLUMNS:
        raise ValueError(f"unexpected pattern columns {columns}")
    arr = np.array(rows, dtype=float).reshape(-1, 2)
    return config, arr[:, 0], arr[:, 1]


def codebook_to_dict(cb: HierarchicalCodebook, config: dict | None = None) -> dict:
    layers = []
    for s, codewords in enumerate(cb.layers, start=1):
        layers.append({
            "layer": s,
            "codewords": [{
                "index": cw.index,
                "range": [cw.psi_a, cw.psi_b],
                "steering": cw.steering,
                "profile": [float(v) for v in cw.profile.values],
            } for cw in codewords],
        })
    return {
        "config": config or {},
        "kind": cb.kind,
        "n": cb.n,
        "s_max": cb.s_max,
        "axis": cb.axis,
        "meta": cb.meta,
        "layers": layers,
    }


def dump_codebook(cb: HierarchicalCodebook, config: dict | None = None) -> str:
    return dumps_json(codebook_to_dict(cb, config))


def load_codebook(text: str) -> tuple[HierarchicalCodebook, dict]:
    """Rebuild a codebook from :func:`dump_codebook` output; returns ``(codebook, config)``."""
    doc = json.loads(text)
    axis = doc.get("axis", "hor")
    cws = []
    for layer in doc["layers"]:
        for c in layer["codewords"]:
            psi_a, psi_b = c["range"]
            cws.append(Codeword(layer["layer"], c["index"], psi_a, psi_b,
                                PhaseProfile(c["profile"], axis), c["steering"]))
    cb = HierarchicalCodebook.from_codewords(doc["n"], cws, kind=doc["kind"],
                                             axis=axis, meta=doc.get("meta"))
    if cb.s_max != doc["s_max"]:
        raise ValueError("stored layer count disagrees with n")
    return cb, doc.get("config", {})


def outcome_to_dict(outcome: TrainingOutcome) -> dict:
    return {
        "steps": [{
            "stage": st.stage,
            "layer": st.layer,
            "probed": [list(c) for c in st.candidates],
            "powers": list(st.powers),
            "selected": list(st.selected),
        } for st in outcome.steps],
        "outcome": {
            "selected_hor": outcome.selected_hor,
            "selected_ver": outcome.selected_ver,
            "layer_hor": outcome.layer_hor,
            "layer_ver": outcome.layer_ver,
            "measurements_used": outcome.measurements_used,
            "misaligned": outcome.misaligned,
        },
    }


def outcome_from_dict(doc: dict) -> TrainingOutcome:
    steps = tuple(
        TrainingStep(st["stage"], st["layer"],
                     tuple(tuple(c) for c in st["probed"]),
                     tuple(float(p) for p in st["powers"]),
                     tuple(st["selected"]))
        for st in doc["steps"]
    )
    o = doc["outcome"]
    return TrainingOutcome(o["selected_hor"], o["selected_ver"], o["layer_hor"],
                           o["layer_ver"], o["measurements_used"], o["misaligned"], steps)


def trace_json(outcome: TrainingOutcome, config: dict | None = None,
               truth: dict | None = None) -> str:
    doc = {"config": config or {}}
    if truth is not None:
        doc["truth"] = truth
    doc.update(outcome_to_dict(outcome))
    return dumps_json(doc)
