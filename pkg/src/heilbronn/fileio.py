"""Configuration JSON files.

Schema::

    {"n": int, "points": [{"x": number, "y": number}, ...], "meta": {...}}

Numbers are written with 17 significant digits so files diff cleanly and
round-trip exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import HeilbronnError
from .geometry import Configuration


class ConfigurationFormatError(ValueError):
    pass


def _num(v: float) -> str:
    s = format(float(v), ".17g")
    if "e" not in s and "." not in s and "inf" not in s and "nan" not in s:
        s += ".0"
    return s


def dumps_configuration(conf: Configuration, meta: dict | None = None) -> str:
    pts = ",\n".join(
        f'    {{"x": {_num(p.x)}, "y": {_num(p.y)}}}' for p in conf.points
    )
    meta_s = json.dumps(meta or {}, sort_keys=True)
    return f'{{\n  "n": {conf.n},\n  "points": [\n{pts}\n  ],\n  "meta": {meta_s}\n}}\n'


def write_configuration(path, conf: Configuration, meta: dict | None = None) -> Path:
    path = Path(path)
    path.write_text(dumps_configuration(conf, meta), encoding="utf-8")
    return path


def loads_configuration(text: str) -> tuple[Configuration, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise ConfigurationFormatError("expected an object with a 'points' list")
    pts = doc["points"]
    try:
        xy = [(float(p["x"]), float(p["y"])) for p in pts]
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigurationFormatError(f"bad point entry: {exc}") from exc
    if "n" in doc and doc["n"] != len(xy):
        raise ConfigurationFormatError(f"n={doc['n']} but {len(xy)} points given")
    try:
        conf = Configuration.from_xy(xy)
    except (ValueError, HeilbronnError) as exc:
        raise ConfigurationFormatError(str(exc)) from exc
    return conf, dict(doc.get("meta") or {})


def read_configuration(path) -> tuple[Configuration, dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationFormatError(f"cannot read {path}: {exc}") from exc
    return loads_configuration(text)
