#!/usr/bin/env python

"""
JSON codecs for schottkit values.

Scalars are strings ("1/2-i", "1.5+0.25*i"), matrices are arrays of
arrays of scalar strings, and every composite is a plain dict:

group      {"kind": "F"|"Z"|"Lattice"|"Surface", "g": n, "period": matrix?}
rep        {"group": group, "images": [matrix, ...], "backend": "exact"|"approx"}
torus      {"g": n, "Z": matrix, "backend": "exact"|"approx"}
cocycle    {"coefficients": rep, "values": [vector, ...]}
gauge      {"A": [matrix, ...], "backend": ...}
components {"components": [{"character": rep, "rep": rep}, ...]}
extension  {"extension": rep, "inclusion": matrix, "projection": matrix}

Every decoder raises ParseError on malformed input.
"""

from typing import Any, Dict, List, Optional, Tuple, Union
import json
import os

from schottkit.algebra.numerics import EXACT, Backend, Scalar, get_backend
from schottkit.algebra.linalg import Matrix
from schottkit.groups.presentations import (
    GroupKind, GroupSpec, Word, format_word, parse_word,
)
from schottkit.reps.representation import Representation
from schottkit.cohomology.cocycles import Cocycle
from schottkit.torus import SchottkyGauge, TorusData
from schottkit.utils.utils import ParseError


def _require(data: Dict, key: str, what: str):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"{what} JSON needs a {key!r} field")
    return data[key]


def _backend(data: Dict, default: Union[str, Backend, None]) -> Backend:
    name = data.get("backend") if isinstance(data, dict) else None
    return get_backend(name or default or EXACT)


# ---- scalars and matrices -------------------------------------

def encode_scalar(value: Scalar) -> str:
    return str(value)


def decode_scalar(text: str, backend: Union[str, Backend] = EXACT) -> Scalar:
    if not isinstance(text, (str, int)):
        raise ParseError(f"scalar must be a string, got {text!r}")
    return get_backend(backend).parse(str(text))


def encode_matrix(mat: Matrix) -> List[List[str]]:
    return mat.tolist_str()


def decode_matrix(data: Any, backend: Union[str, Backend] = EXACT) -> Matrix:
    backend = get_backend(backend)
    if not isinstance(data, list) or any(not isinstance(row, list) for row in data):
        raise ParseError("matrix JSON must be an array of arrays")
    if data and any(len(row) != len(data[0]) for row in data):
        raise ParseError("matrix JSON rows have different lengths")
    entries = [decode_scalar(i, backend) for row in data for i in row]
    ncols = len(data[0]) if data else 0
    return Matrix(len(data), ncols, entries, backend)


def encode_vector(vec: Matrix) -> List[str]:
    return [str(i) for i in vec.flat()]


def decode_vector(data: Any, backend: Union[str, Backend] = EXACT) -> Matrix:
    if not isinstance(data, list):
        raise ParseError("vector JSON must be an array")
    backend = get_backend(backend)
    return Matrix.column([decode_scalar(i, backend) for i in data], backend)


# ---- groups and words -----------------------------------------

def encode_group(group: GroupSpec) -> Dict:
    data = {"kind": group.kind.value, "g": group.g}
    if group.period is not None:
        data["period"] = encode_matrix(group.period)
    return data


def decode_group(data: Any, backend: Union[str, Backend] = EXACT) -> GroupSpec:
    if isinstance(data, str):
        kind, _, arg = data.partition(":")
        if kind == "Lattice":
            raise ParseError("inline group shorthand cannot load a period file")
        data = {"kind": kind, "g": arg}
    try:
        kind = GroupKind(_require(data, "kind", "group"))
        gval = int(_require(data, "g", "group"))
    except (ValueError, TypeError) as inst:
        raise ParseError(f"bad group JSON {data!r}") from inst
    period = data.get("period")
    if period is not None:
        period = decode_matrix(period, _backend(data, backend))
    return GroupSpec(kind, gval, period)


def encode_word(word: Word, group: GroupSpec) -> str:
    return format_word(word, group)


def decode_word(text: str, group: GroupSpec) -> Word:
    return parse_word(text, group)


# ---- representations, cocycles, tori ---------------------------

def encode_rep(rep: Representation) -> Dict:
    return {
        "group": encode_group(rep.group),
        "rank": rep.rank,
        "backend": rep.backend.name,
        "images": [encode_matrix(m) for m in rep.images],
    }


def decode_rep(data: Any, backend: Union[str, Backend, None] = None) -> Representation:
    backend = _backend(data, backend)
    group = decode_group(_require(data, "group", "representation"), backend)
    images = [decode_matrix(m, backend) for m in _require(data, "images", "representation")]
    rank = int(data.get("rank", images[0].rows if images else 0))
    return Representation(group, rank, tuple(images))


def encode_torus(torus: TorusData) -> Dict:
    return {"g": torus.g, "Z": encode_matrix(torus.period), "backend": torus.backend.name}


def decode_torus(data: Any, backend: Union[str, Backend, None] = None) -> TorusData:
    backend = _backend(data, backend)
    period = decode_matrix(_require(data, "Z", "torus"), backend)
    if "g" in data and int(data["g"]) != period.rows:
        raise ParseError(f"torus g={data['g']} does not match Z of size {period.rows}")
    return TorusData.from_period(period)


def encode_cocycle(cocycle: Cocycle) -> Dict:
    return {
        "coefficients": encode_rep(cocycle.coefficients),
        "values": [encode_vector(v) for v in cocycle.values],
    }


def decode_cocycle(data: Any, backend: Union[str, Backend, None] = None) -> Cocycle:
    coefficients = decode_rep(_require(data, "coefficients", "cocycle"), backend)
    values = [decode_vector(v, coefficients.backend) for v in _require(data, "values", "cocycle")]
    return Cocycle(coefficients.group, coefficients, tuple(values))


def encode_gauge(gauge: SchottkyGauge) -> Dict:
    return {"A": [encode_matrix(m) for m in gauge.matrices], "backend": gauge.backend}


def decode_gauge(data: Any, backend: Union[str, Backend, None] = None) -> SchottkyGauge:
    backend = _backend(data, backend)
    mats = tuple(decode_matrix(m, backend) for m in _require(data, "A", "gauge"))
    return SchottkyGauge(mats, backend.name)


def decode_components(data: Any, backend: Union[str, Backend, None] = None) -> List[Tuple[Representation, Representation]]:
    comps = _require(data, "components", "flat sum")
    return [
        (decode_rep(_require(c, "character", "component"), backend),
         decode_rep(_require(c, "rep", "component"), backend))
        for c in comps
    ]


def encode_extension(extension: Representation, inclusion: Matrix, projection: Matrix) -> Dict:
    return {
        "extension": encode_rep(extension),
        "inclusion": encode_matrix(inclusion),
        "projection": encode_matrix(projection),
    }


def decode_extension(data: Any, backend: Union[str, Backend, None] = None) -> Tuple[Representation, Matrix, Matrix]:
    rep = decode_rep(_require(data, "extension", "extension"), backend)
    return (
        rep,
        decode_matrix(_require(data, "inclusion", "extension"), rep.backend),
        decode_matrix(_require(data, "projection", "extension"), rep.backend),
    )


# ---- files ------------------------------------------------------

def load_json(path: str) -> Any:
    """Read one JSON document; ParseError if missing or malformed."""
    if not os.path.exists(path):
        raise ParseError(f"input file {path} does not exist")
    with open(path, "r", encoding="utf-8") as infile:
        try:
            return json.load(infile)
        except json.JSONDecodeError as inst:
            raise ParseError(f"{path} is not valid JSON: {inst}") from inst


def dump_json(data: Any, path: Optional[str] = None) -> str:
    """Serialize with stable key order; write to path if given."""
    text = json.dumps(data, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as out:
            out.write(text + "\n")
    return text
