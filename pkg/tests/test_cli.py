#!/usr/bin/env python

import json

import pytest

from schottkit.groups.presentations import alpha_surface, free_group
from schottkit.reps.representation import pullback
from schottkit.io.codec import decode_rep, encode_rep
from schottkit.cli import run
from schottkit.utils.logger_setup import set_loglevel
from schottkit.utils.randgen import random_rep


JORDAN = [["1", "1"], ["0", "1"]]
LATTICE_I = {"kind": "Lattice", "g": 1, "period": [["i"]]}


@pytest.fixture(autouse=True)
def _quiet_logger():
    yield
    # run() binds loguru to the captured stderr
    set_loglevel("WARNING")


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def _run(capsys, *argv):
    code = run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_h1_free_trivial(tmp_path, capsys):
    rep = _write(tmp_path, "trivial1.json", {"group": {"kind": "F", "g": 3}, "images": [[["1"]]] * 3})
    code, report = _run(capsys, "h1", "--group", "F:3", "--rep", rep)
    assert code == 0
    assert report["command"] == "h1"
    assert report["result"]["dim"] == 3
    assert report["inputs"]["rep"] == rep


def test_iso_same_rep(tmp_path, capsys):
    rep = _write(tmp_path, "a.json", {"group": {"kind": "F", "g": 1}, "images": [JORDAN]})
    code, report = _run(capsys, "iso", "--rep1", rep, "--rep2", rep)
    assert code == 0
    assert report["result"] == {"isomorphic": True, "witness": [["1", "0"], ["0", "1"]]}


def test_schottkyize_then_verify(tmp_path, capsys):
    torus = _write(tmp_path, "t.json", {"g": 1, "Z": [["i"]]})
    rho = _write(tmp_path, "rho.json", {"group": LATTICE_I, "images": [JORDAN, JORDAN]})
    code, report = _run(capsys, "schottkyize", "--torus", torus, "--rep", rho)
    assert code == 0
    assert report["result"]["kind"] == "unipotent"
    assert report["result"]["sigma"]["images"] == [[["1", "1-i"], ["0", "1"]]]
    assert report["result"]["gauge"]["A"] == [[["0", "-1"], ["0", "0"]]]
    assert "lattice" in report["certificates"]["gauge"]
    assert report["residuals"]["gauge"] == "0"

    sigma = _write(tmp_path, "sigma.json", report["result"]["sigma"])
    gauge = _write(tmp_path, "gauge.json", report["result"]["gauge"])
    code, check = _run(capsys, "verify-gauge", "--torus", torus, "--rep", rho,
                       "--sigma", sigma, "--gauge", gauge)
    assert code == 0
    assert check["result"]["verified"] is True


def test_schottkyize_flat_sum(tmp_path, capsys):
    torus = _write(tmp_path, "t.json", {"g": 1, "Z": [["i"]]})
    comps = _write(tmp_path, "c.json", {"components": [{
        "character": {"group": LATTICE_I, "images": [[["1"]], [["1"]]]},
        "rep": {"group": LATTICE_I, "images": [JORDAN, JORDAN]},
    }]})
    code, report = _run(capsys, "schottkyize", "--torus", torus, "--components", comps)
    assert code == 0
    assert report["result"]["kind"] == "flat_sum"
    assert report["result"]["sigma"]["backend"] == "approx"


def test_predicates_and_ext_table(tmp_path, capsys):
    rho = _write(tmp_path, "rho.json", {"group": LATTICE_I, "images": [JORDAN, [["2", "0"], ["0", "2"]]]})
    assert _run(capsys, "is-schottky", "--rep", rho)[1]["result"] == {"schottky": False}
    assert _run(capsys, "is-principal-schottky", "--rep", rho)[1]["result"] == {"principal_schottky": True}
    assert _run(capsys, "ad-schottky", "--rep", rho)[1]["result"] == {"ad_schottky": True}

    code, report = _run(capsys, "ext-table", "--max-g", "2")
    assert code == 0
    assert [row["h1"] for row in report["result"]["table"]] == [1, 1, 2, 2]


def test_jordan_and_peel(tmp_path, capsys):
    mat = _write(tmp_path, "m.json", [["2", "1"], ["0", "2"]])
    code, report = _run(capsys, "jordan", "--matrix", mat)
    assert code == 0
    assert report["result"]["s"] == [["2", "0"], ["0", "2"]]
    assert report["result"]["u"] == [["1", "1/2"], ["0", "1"]]

    rep = _write(tmp_path, "j.json", {"group": {"kind": "Z", "g": 1}, "images": [JORDAN]})
    code, report = _run(capsys, "peel", "--rep", rep)
    assert code == 0
    assert report["result"]["quotient"]["images"] == [[["1"]]]
    assert report["certificates"]["exact"] is True


def test_non_commuting_is_exit_2(tmp_path, capsys):
    rep = _write(tmp_path, "nc.json", {
        "group": {"kind": "Z", "g": 2},
        "images": [JORDAN, [["1", "0"], ["1", "1"]]],
    })
    code, report = _run(capsys, "validate", "--rep", rep)
    assert code == 2
    assert report["error"]["type"] == "NonCommuting"


def test_parse_errors_are_exit_1(tmp_path, capsys):
    rep = _write(tmp_path, "bad.json", {"group": {"kind": "F", "g": 1}, "images": [[["1/0"]]]})
    code, report = _run(capsys, "validate", "--rep", rep)
    assert code == 1
    assert report["error"]["type"] == "ParseError"

    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert _run(capsys, "validate", "--rep", str(broken))[0] == 1
    assert _run(capsys, "frobnicate")[0] == 1
    assert _run(capsys)[0] == 1
    assert _run(capsys, "validate")[0] == 1


def test_out_file_matches_stdout(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, report = _run(capsys, "ext-table", "--max-g", "1", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == report


def test_emitted_reps_reparse(tmp_path, capsys, rng):
    for trial in range(100):
        g = 1 + trial % 2
        rep = random_rep(rng, free_group(g), 1 + trial % 2, bound=3)
        path = _write(tmp_path, "r.json", encode_rep(rep))
        code, report = _run(capsys, "pullback", "--rep", path)
        assert code == 0
        assert decode_rep(report["result"]["rep"]) == pullback(rep, alpha_surface(g))
