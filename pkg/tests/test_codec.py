#!/usr/bin/env python

import json

import pytest

from schottkit.algebra.numerics import APPROX, EXACT
from schottkit.algebra.linalg import Matrix
from schottkit.groups.presentations import free_abelian, free_group, lattice, surface_group
from schottkit.reps.representation import Representation, hom_rep, trivial
from schottkit.cohomology.cocycles import Cocycle
from schottkit.torus import SchottkyGauge, TorusData
from schottkit.io.codec import (
    decode_cocycle, decode_components, decode_extension, decode_gauge,
    decode_group, decode_matrix, decode_rep, decode_torus, dump_json,
    encode_cocycle, encode_extension, encode_gauge, encode_group,
    encode_matrix, encode_rep, encode_torus, load_json,
)
from schottkit.utils.utils import ParseError
from schottkit.utils.randgen import random_character, random_rep


def _reparse(data):
    return json.loads(dump_json(data))


def test_matrix_text_form():
    mat = Matrix.from_rows([[1, "1/2-i"], ["-3*i", 0]])
    assert encode_matrix(mat) == [["1", "1/2-i"], ["-3*i", "0"]]
    assert decode_matrix(encode_matrix(mat)) == mat


def test_matrix_parse_errors():
    with pytest.raises(ParseError):
        decode_matrix([["1/0"]])
    with pytest.raises(ParseError):
        decode_matrix([["1", "2"], ["3"]])
    with pytest.raises(ParseError):
        decode_matrix({"rows": 1})
    with pytest.raises(ParseError):
        decode_matrix([["1.5"]], EXACT)


def test_groups():
    period = Matrix.from_rows([["i", 0], [0, "2*i"]])
    for group in (free_group(2), free_abelian(3), surface_group(1), lattice(period)):
        assert decode_group(_reparse(encode_group(group))) == group
    assert decode_group("F:3") == free_group(3)
    with pytest.raises(ParseError):
        decode_group({"kind": "Q", "g": 1})
    with pytest.raises(ParseError):
        decode_group("Lattice:z.json")


def test_reps_reparse(rng):
    for trial in range(100):
        group = (free_group, free_abelian)[trial % 2](1 + trial % 3)
        rep = random_rep(rng, group, 1 + trial % 3)
        assert decode_rep(_reparse(encode_rep(rep))) == rep
    chi = random_character(rng, free_abelian(2))
    back = decode_rep(_reparse(encode_rep(chi)))
    assert back.backend is APPROX
    assert back.images == chi.images


def test_rep_missing_field():
    with pytest.raises(ParseError):
        decode_rep({"group": {"kind": "F", "g": 1}})


def test_torus_and_gauge():
    torus = TorusData.from_period(Matrix.from_rows([["i"]]))
    assert decode_torus(_reparse(encode_torus(torus))).period == torus.period
    with pytest.raises(ParseError):
        decode_torus({"g": 2, "Z": [["i"]]})
    gauge = SchottkyGauge((Matrix.from_rows([[0, -1], [0, 0]]),))
    assert decode_gauge(_reparse(encode_gauge(gauge))) == gauge


def test_cocycle_and_extension(jblock):
    group = free_group(1)
    one = trivial(group, 1)
    cocycle = Cocycle(group, hom_rep(one, one), (Matrix.column(["1/2"]),))
    assert decode_cocycle(_reparse(encode_cocycle(cocycle))) == cocycle
    ext = Representation(group, 2, (jblock,))
    incl, proj = Matrix.column([1, 0]), Matrix.from_rows([[0, 1]])
    assert decode_extension(_reparse(encode_extension(ext, incl, proj))) == (ext, incl, proj)


def test_components():
    group = {"kind": "Lattice", "g": 1, "period": [["i"]]}
    data = {"components": [{
        "character": {"group": group, "backend": "approx", "images": [[["2.0"]], [["-1.0"]]]},
        "rep": {"group": group, "images": [[["1", "1"], ["0", "1"]]] * 2},
    }]}
    [(chi, rho)] = decode_components(data)
    assert chi.backend is APPROX and rho.backend is EXACT
    with pytest.raises(ParseError):
        decode_components({"parts": []})


def test_files(tmp_path):
    path = tmp_path / "m.json"
    dump_json({"b": 1, "a": [1, 2]}, str(path))
    assert load_json(str(path)) == {"a": [1, 2], "b": 1}
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_json(str(bad))
    with pytest.raises(ParseError):
        load_json(str(tmp_path / "missing.json"))
