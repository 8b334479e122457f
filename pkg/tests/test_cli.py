import json

import numpy as np
import pytest

from nclp import MultiMatrixAlgebra, RawIsometry, random_jordan, random_sample, synthesize, to_raw
from nclp.cli import main
from nclp.serialize import (
    element_to_json,
    isometry_to_json,
    jordan_to_json,
    read_json,
    write_json,
)


@pytest.fixture
def fixtures(tmp_path):
    rng = np.random.default_rng(21)
    src = MultiMatrixAlgebra.from_dims([2, 1], [0.9, 1.3])
    tgt = MultiMatrixAlgebra.from_dims([1, 2], [1.6, 0.7])
    j = random_jordan(src, tgt, rng)
    w = random_sample(tgt, "unitary", rng)
    t = to_raw(synthesize(j, w, 3.0))
    paths = {
        "jordan": tmp_path / "j.json",
        "unitary": tmp_path / "w.json",
        "isometry": tmp_path / "t.json",
        "bad": tmp_path / "bad.json",
        "dir": tmp_path,
    }
    write_json(paths["jordan"], jordan_to_json(j))
    write_json(paths["unitary"], element_to_json(w))
    write_json(paths["isometry"], isometry_to_json(t))
    bad = RawIsometry(3.0, src, tgt, 1.4 * t.matrix)
    write_json(paths["bad"], isometry_to_json(bad))
    return paths


def test_run_small_suite_passes(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["run", "--suite", "sip", "--seed", "5", "--n", "4",
                 "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert capsys.readouterr().out.count("pass") >= 1


def test_run_all_exit_zero():
    assert main(["run", "--suite", "all", "--n", "2", "--seed", "1"]) == 0


def test_run_rejects_p2_grid(capsys):
    assert main(["run", "--p", "1.5,2,3", "--n", "2"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_run_rejects_unknown_suite():
    assert main(["run", "--suite", "bogus", "--n", "2"]) == 2


def test_run_rejects_bad_p_token():
    assert main(["run", "--p", "1.5,huh", "--n", "2"]) == 2


def test_synth_then_decompose_roundtrip(fixtures, capsys):
    synth_out = fixtures["dir"] / "synth.json"
    dec_out = fixtures["dir"] / "dec.json"
    assert main(["synth", "--jordan", str(fixtures["jordan"]),
                 "--unitary", str(fixtures["unitary"]),
                 "--p", "3", "--out", str(synth_out)]) == 0
    assert main(["decompose", "--in", str(synth_out),
                 "--out", str(dec_out)]) == 0
    doc = read_json(dec_out)
    assert doc["p"] == 3.0
    assert doc["residual"] < 1e-7
    # the synthesized dense map matches the fixture built in-process
    direct = read_json(fixtures["isometry"])
    assert json.dumps(read_json(synth_out), sort_keys=True) == json.dumps(direct, sort_keys=True)


def test_synth_inf(fixtures):
    out = fixtures["dir"] / "inf.json"
    assert main(["synth", "--jordan", str(fixtures["jordan"]),
                 "--unitary", str(fixtures["unitary"]),
                 "--p", "inf", "--out", str(out)]) == 0
    assert read_json(out)["p"] == "inf"


def test_synth_rejects_p2(fixtures, capsys):
    assert main(["synth", "--jordan", str(fixtures["jordan"]),
                 "--unitary", str(fixtures["unitary"]), "--p", "2"]) == 2


def test_decompose_rejects_non_isometry(fixtures, capsys):
    assert main(["decompose", "--in", str(fixtures["bad"])]) == 1
    assert "polar part not unitary" in capsys.readouterr().err


def test_decompose_missing_file(tmp_path):
    assert main(["decompose", "--in", str(tmp_path / "nope.json")]) == 2


def test_decompose_prints_json_without_out(fixtures, capsys):
    assert main(["decompose", "--in", str(fixtures["isometry"])]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert "jordan" in doc and "w" in doc
