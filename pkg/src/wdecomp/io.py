"""JSON persistence of decompositions.

Schema::

    {"dims": [d_1, ...], "scale": s,
     "terms": [{"coeff": [re, im], "vectors": [[[re, im], [re, im]], ...]}, ...],
     "meta": {"tool": "wdecomp/<version>", "anchors": {...}, "tolerance": t, "residual": r}}

Scalars are written as floats, whose JSON ``repr`` round-trips exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from . import __version__
from .exceptions import InvalidProfileError, MalformedFileError
from .indexcomb import DegreeProfile
from .tensorcore import Decomposition, RankOneTerm

TOOL = f"wdecomp/{__version__}"

_pair = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

SCHEMA = {
    "type": "object",
    "required": ["dims", "scale", "terms", "meta"],
    "properties": {
        "dims": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
        "scale": {"type": "number"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "vectors"],
                "properties": {
                    "coeff": _pair,
                    "vectors": {
                        "type": "array",
                        "items": {"type": "array", "items": _pair, "minItems": 2, "maxItems": 2},
                    },
                },
            },
        },
        "meta": {"type": "object"},
    },
}


def _c(x) -> list:
    z = complex(x)
    return [z.real, z.imag]


def to_dict(dec: Decomposition, meta: dict | None = None) -> dict:
    return {
        "dims": list(dec.profile.degrees),
        "scale": float(dec.target_scale),
        "terms": [
            {"coeff": _c(t.weight), "vectors": [[_c(p), _c(q)] for p, q in t.vectors]}
            for t in dec.terms
        ],
        "meta": {"tool": TOOL, **(meta or {})},
    }


def from_dict(data: dict) -> tuple:
    """Return ``(decomposition, meta)``; raises :class:`MalformedFileError`."""
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise MalformedFileError(f"invalid decomposition file: {exc.message}") from exc
    try:
        profile = DegreeProfile(tuple(data["dims"]))
    except InvalidProfileError as exc:
        raise MalformedFileError(str(exc)) from exc
    terms = []
    for n, t in enumerate(data["terms"]):
        if len(t["vectors"]) != profile.k:
            raise MalformedFileError(f"term {n} has {len(t['vectors'])} factors, expected {profile.k}")
        try:
            terms.append(
                RankOneTerm(complex(*t["coeff"]), tuple((complex(*p), complex(*q)) for p, q in t["vectors"]))
            )
        except ValueError as exc:
            raise MalformedFileError(f"term {n}: {exc}") from exc
    scale = data["scale"]
    if float(scale).is_integer():
        scale = int(scale)
    return Decomposition(profile, terms, target_scale=scale), data["meta"]


def dumps(dec: Decomposition, meta: dict | None = None) -> str:
    return json.dumps(to_dict(dec, meta), indent=1)


def loads(text: str) -> tuple:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFileError(f"not valid JSON: {exc}") from exc
    return from_dict(data)


def save(dec: Decomposition, path, meta: dict | None = None) -> None:
    Path(path).write_text(dumps(dec, meta))


def load(path) -> tuple:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def anchors_to_json(anchors: dict) -> dict:
    return {str(s): list(t) for s, t in sorted(anchors.items())}
