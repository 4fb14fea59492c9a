import json

import pytest

from fedosov import ProblemSpecError, load_problem, parse_problem
from fedosov.problem import DEFAULT_TRUNCATION, symmetrize_christoffel

STD = [["0", "1"], ["-1", "0"]]


def test_defaults():
    pr = parse_problem({"dimension": 2, "poisson": STD})
    assert pr.truncation == DEFAULT_TRUNCATION
    assert pr.christoffel == {}
    assert pr.connection().is_flat_data


def test_symmetrization_notes():
    table, notes = symmetrize_christoffel({"2,1,1": "x1"}, 2)
    assert set(table) == {(1, 1, 2), (1, 2, 1), (2, 1, 1)}
    assert notes == ["christoffel 2,1,1 symmetrized over 1,1,2 1,2,1 2,1,1"]


def test_conflicting_permutations():
    with pytest.raises(ProblemSpecError, match="permutations"):
        symmetrize_christoffel({"1,1,2": "1", "2,1,1": "2"}, 2)


@pytest.mark.parametrize("obj,match", [
    ([], "JSON object"),
    ({"poisson": STD}, "dimension"),
    ({"dimension": 2, "poisson": [["0"]]}, "2x2"),
    ({"dimension": 2, "poisson": [["0", "y1"], ["-1", "0"]]}, "poisson entry"),
    ({"dimension": 2, "poisson": STD, "christoffel": {"1,1": "1"}}, "out of range"),
    ({"dimension": 2, "poisson": STD, "christoffel": {"a,b,c": "1"}}, "form"),
    ({"dimension": 2, "poisson": STD, "truncation": 2}, "truncation"),
])
def test_malformed(obj, match):
    with pytest.raises(ProblemSpecError, match=match):
        parse_problem(obj)


def test_load(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"dimension": 2, "poisson": STD, "christoffel": {"1,1,1": "x2"}, "truncation": 8}))
    pr = load_problem(p)
    assert pr.truncation == 8
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ProblemSpecError, match="invalid JSON"):
        load_problem(bad)
