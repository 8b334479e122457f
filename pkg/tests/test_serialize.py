import json
import math

import numpy as np
import pytest

from nclp import (
    LpVector,
    MultiMatrixAlgebra,
    UsageError,
    frob_norm,
    jordan_distance,
    random_jordan,
    random_sample,
    synthesize,
    to_raw,
)
from nclp.serialize import (
    algebra_from_json,
    algebra_to_json,
    decomposition_from_json,
    decomposition_to_isometry,
    decomposition_to_json,
    element_from_json,
    element_to_json,
    isometry_from_json,
    isometry_to_json,
    jordan_from_json,
    jordan_to_json,
    read_json,
    vector_from_json,
    vector_to_json,
    write_json,
)
from nclp.isometry import decompose

M2C = MultiMatrixAlgebra.from_dims([2, 1], [0.8, 1.7])


def test_algebra_roundtrip():
    doc = algebra_to_json(M2C)
    assert doc == {"blocks": [{"dim": 2, "weight": 0.8}, {"dim": 1, "weight": 1.7}]}
    assert algebra_from_json(doc) == M2C


def test_algebra_malformed():
    for bad in ({}, {"blocks": [{"dim": 2}]}, {"blocks": "nope"}, 17):
        with pytest.raises(UsageError):
            algebra_from_json(bad)


def test_element_roundtrip():
    x = random_sample(M2C, "element", 3)
    y = element_from_json(element_to_json(x))
    assert y.algebra == M2C
    assert frob_norm(y - x) < 1e-15


def test_element_accepts_flat_rows_and_plain_reals():
    doc = {
        "algebra": algebra_to_json(M2C),
        "blocks": [
            [1.0, 0.0, 0.0, 1.0],                       # flat row-major
            [[{"re": 2.0, "im": -1.0}]],                # nested with complex scalars
        ],
    }
    x = element_from_json(doc)
    assert np.allclose(x.data[0], np.eye(2))
    assert x.data[1][0, 0] == 2.0 - 1.0j


def test_vector_roundtrip_including_inf():
    for p in (1.0, 3.0, math.inf):
        xi = LpVector(random_sample(M2C, "element", 5), p)
        doc = vector_to_json(xi)
        if p == math.inf:
            assert doc["p"] == "inf"
        got = vector_from_json(doc)
        assert got.p == p
        assert frob_norm(got.element - xi.element) < 1e-15


def test_jordan_roundtrip():
    tgt = MultiMatrixAlgebra.from_dims([1, 2], [1.0, 2.0])
    j = random_jordan(M2C, tgt, 7)
    got = jordan_from_json(jordan_to_json(j))
    assert jordan_distance(got, j) < 1e-15
    assert got.sigma == j.sigma and got.anti == j.anti


def test_isometry_roundtrip():
    tgt = MultiMatrixAlgebra.from_dims([1, 2], [1.0, 2.0])
    j = random_jordan(M2C, tgt, 9)
    w = random_sample(tgt, "unitary", 10)
    t = to_raw(synthesize(j, w, 1.5))
    got = isometry_from_json(isometry_to_json(t))
    assert got.p == 1.5
    assert got.source == M2C and got.target == tgt
    assert np.linalg.norm(got.matrix - t.matrix) < 1e-15


def test_decomposition_roundtrip_and_resynthesis():
    tgt = MultiMatrixAlgebra.from_dims([1, 2], [1.0, 2.0])
    j = random_jordan(M2C, tgt, 11)
    w = random_sample(tgt, "unitary", 12)
    t = to_raw(synthesize(j, w, 3.0))
    dec = decompose(t)
    doc = decomposition_to_json(dec)
    got = decomposition_from_json(doc)
    assert frob_norm(got.w - dec.w) < 1e-15
    assert jordan_distance(got.jordan, dec.jordan) < 1e-15
    t2 = to_raw(decomposition_to_isometry(got))
    assert np.linalg.norm(t2.matrix - t.matrix) < 1e-7


def test_file_roundtrip(tmp_path):
    path = tmp_path / "x.json"
    x = random_sample(M2C, "psd", 2)
    write_json(path, element_to_json(x))
    text = path.read_text()
    assert text.endswith("\n")
    assert frob_norm(element_from_json(read_json(path)) - x) < 1e-15


def test_write_json_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    x = random_sample(M2C, "element", 6)
    write_json(a, element_to_json(x))
    write_json(b, element_to_json(random_sample(M2C, "element", 6)))
    assert a.read_text() == b.read_text()


def test_read_json_errors(tmp_path):
    with pytest.raises(UsageError):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(UsageError):
        read_json(bad)


def test_matrix_shape_enforced():
    doc = element_to_json(random_sample(M2C, "element", 1))
    doc["blocks"][0] = [[1.0, 0.0]]
    with pytest.raises(UsageError):
        element_from_json(doc)
