"""Structured I/O: file schemas and byte-deterministic JSON reports.

All documents are JSON.  Floats are rendered at 17 significant digits,
which round-trips IEEE doubles exactly, keys are emitted sorted, and no
timestamps or environment-dependent values enter a report, so identical
configuration and seed produce byte-identical output.

Schemas (words are digit strings, symbols ``0..d-1``):

* potential: ``{"d": int, "depth": int, "table": {"word": number}}``;
  every allowed word must be present, no implicit zeros.
* joint potential: ``{"d_x": int, "d_y": int, "depth_x": int, "depth_y":
  int, "table": {"xword|yword": number}}``.
* measure: ``{"d": int, "order": int, "pi": {"word": p}, "P": {"word":
  {"symbol": p}}}``.
* profile: ``{"mu": measure, "nu": measure}``.
* game: ``{"mode": "ergodic"|"thermodynamic", "d_x": int, "d_y": int,
  "A1": joint-without-d, "A2": joint-without-d}``.

JSON documents describe full shifts; transition-restricted specs are a
library-level feature.
"""

from __future__ import annotations

import json
import math
from typing import Any, Mapping

import numpy as np

from .errors import SchemaError
from .games import GameSpec, NashReport, StrategyProfile
from .measures import MarkovMeasure, WordDistribution, measure_from_dict, measure_to_dict
from .symbolic import (
    CylinderFunction,
    JointCylinderFunction,
    ShiftSpec,
    str_to_word,
    word_to_str,
)


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise SchemaError("reports may not contain NaN or infinite values")
    return format(float(x), ".17g")


def _encode(obj: Any, indent: int) -> str:
    pad = " " * indent
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise SchemaError(f"JSON object keys must be strings, got {key!r}")
            items.append(f'{pad}  {json.dumps(key)}: {_encode(obj[key], indent + 2)}')
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if obj is None:
        return "null"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_encode(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, 17-significant-digit floats."""
    return _encode(obj, 0) + "\n"


def write_report(path: str, obj: Any) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_canonical(obj))


# ---------------------------------------------------------------------------
# Potentials


def potential_to_dict(psi: CylinderFunction) -> dict:
    return {
        "d": psi.spec.alphabet_size,
        "depth": psi.depth,
        "table": {word_to_str(w): float(v) for w, v in psi.table.items()},
    }


def potential_from_dict(doc: Mapping, spec: ShiftSpec | None = None) -> CylinderFunction:
    for key in ("d", "depth", "table"):
        if key not in doc:
            raise SchemaError(f"potential document missing key {key!r}")
    d = int(doc["d"])
    depth = int(doc["depth"])
    if spec is None:
        spec = ShiftSpec(d)
    elif spec.alphabet_size != d:
        raise SchemaError("potential alphabet size does not match the target spec")
    table = {}
    for text, value in doc["table"].items():
        w = str_to_word(text, d)
        if len(w) != depth:
            raise SchemaError(f"table word {text!r} does not have depth {depth}")
        table[w] = float(value)
    expected = set(spec.words(depth))
    missing = expected - set(table)
    if missing:
        raise SchemaError(
            f"potential table missing {len(missing)} words (no implicit zeros), "
            f"first: {word_to_str(sorted(missing)[0])!r}"
        )
    extra = set(table) - expected
    if extra:
        raise SchemaError(f"potential table has unexpected words, first: {sorted(extra)[0]!r}")
    return CylinderFunction(spec, depth, table)


def joint_to_dict(A: JointCylinderFunction) -> dict:
    return {
        "d_x": A.spec_x.alphabet_size,
        "d_y": A.spec_y.alphabet_size,
        "depth_x": A.depth_x,
        "depth_y": A.depth_y,
        "table": {
            f"{word_to_str(wx)}|{word_to_str(wy)}": float(v)
            for (wx, wy), v in A.table.items()
        },
    }


def joint_from_dict(
    doc: Mapping, spec_x: ShiftSpec | None = None, spec_y: ShiftSpec | None = None
) -> JointCylinderFunction:
    for key in ("d_x", "d_y", "depth_x", "depth_y", "table"):
        if key not in doc:
            raise SchemaError(f"joint potential document missing key {key!r}")
    d_x, d_y = int(doc["d_x"]), int(doc["d_y"])
    depth_x, depth_y = int(doc["depth_x"]), int(doc["depth_y"])
    spec_x = spec_x or ShiftSpec(d_x)
    spec_y = spec_y or ShiftSpec(d_y)
    table = {}
    for text, value in doc["table"].items():
        if "|" not in text:
            raise SchemaError(f"joint table key {text!r} must look like 'xword|yword'")
        tx, ty = text.split("|", 1)
        wx = str_to_word(tx, d_x)
        wy = str_to_word(ty, d_y)
        if len(wx) != depth_x or len(wy) != depth_y:
            raise SchemaError(f"joint table key {text!r} has wrong word depths")
        table[(wx, wy)] = float(value)
    expected = {(wx, wy) for wx in spec_x.words(depth_x) for wy in spec_y.words(depth_y)}
    if set(table) != expected:
        raise SchemaError("joint table must cover exactly the allowed word pairs")
    return JointCylinderFunction(spec_x, spec_y, depth_x, depth_y, table)


# ---------------------------------------------------------------------------
# Games, profiles, reports


def game_to_dict(game: GameSpec) -> dict:
    doc_a1 = joint_to_dict(game.A1)
    doc_a2 = joint_to_dict(game.A2)
    return {
        "mode": game.mode,
        "d_x": game.spec_x.alphabet_size,
        "d_y": game.spec_y.alphabet_size,
        "A1": {k: doc_a1[k] for k in ("depth_x", "depth_y", "table")},
        "A2": {k: doc_a2[k] for k in ("depth_x", "depth_y", "table")},
    }


def game_from_dict(doc: Mapping, mode_override: str | None = None) -> GameSpec:
    for key in ("mode", "d_x", "d_y", "A1", "A2"):
        if key not in doc:
            raise SchemaError(f"game document missing key {key!r}")
    d_x, d_y = int(doc["d_x"]), int(doc["d_y"])
    spec_x = ShiftSpec(d_x)
    spec_y = ShiftSpec(d_y)
    mode = mode_override or str(doc["mode"])
    def load(sub: Mapping) -> JointCylinderFunction:
        merged = {"d_x": d_x, "d_y": d_y, **sub}
        return joint_from_dict(merged, spec_x, spec_y)
    return GameSpec(spec_x, spec_y, load(doc["A1"]), load(doc["A2"]), mode)


def profile_to_dict(profile: StrategyProfile) -> dict:
    return {"mu": measure_to_dict(profile.mu), "nu": measure_to_dict(profile.nu)}


def profile_from_dict(doc: Mapping, game: GameSpec | None = None) -> StrategyProfile:
    for key in ("mu", "nu"):
        if key not in doc:
            raise SchemaError(f"profile document missing key {key!r}")
    spec_x = game.spec_x if game else None
    spec_y = game.spec_y if game else None
    return StrategyProfile(
        measure_from_dict(doc["mu"], spec_x), measure_from_dict(doc["nu"], spec_y)
    )


def word_distribution_to_dict(dist: WordDistribution) -> dict:
    return {
        "d": dist.spec.alphabet_size,
        "depth": dist.depth,
        "weights": {word_to_str(w): float(x) for w, x in zip(dist.words, dist.weights)},
    }


def report_to_dict(report: NashReport) -> dict:
    extras = {}
    for key, value in report.extras.items():
        if isinstance(value, list):
            extras[key] = [list(v) if isinstance(v, tuple) else v for v in value]
        elif isinstance(value, tuple):
            extras[key] = list(value)
        else:
            extras[key] = value
    return {
        "method": report.method,
        "mode": report.mode,
        "converged": bool(report.converged),
        "eps1": report.eps1,
        "eps2": report.eps2,
        "eps_tol": report.eps_tol,
        "value": report.value,
        "profile": profile_to_dict(report.profile),
        "iterations": [
            {
                "step": s.index,
                "w1hi_mu": None if math.isnan(s.step_mu) else s.step_mu,
                "w1hi_nu": None if math.isnan(s.step_nu) else s.step_nu,
                "payoff1": s.payoff1,
                "payoff2": s.payoff2,
            }
            for s in report.iterations
        ],
        "extras": extras,
    }


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
