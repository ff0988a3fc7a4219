import json

import numpy as np
import pytest

from credal import fileio
from credal.errors import ParseError
from credal.sets import LinearSystem, ParametricFamily, VertexSet


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


PROBLEM = {
    "space": {"atoms": ["w1", "w2", "w3", "w4"]},
    "distributions": {"u": [0.25, 0.25, 0.25, 0.25]},
    "intervals": {"box": {"lo": [0.15, 0.15, 0.15, 0.15], "hi": [0.4, 0.4, 0.4, 0.4]}},
}


def test_problem_file_round_trip(tmp_path):
    problem = fileio.load_problem(write(tmp_path, "p.json", PROBLEM))
    assert problem.space.atoms == ("w1", "w2", "w3", "w4")
    assert np.array_equal(problem.distributions["u"].probs, [0.25] * 4)
    assert problem.intervals["box"].lo[0] == 0.15
    assert fileio.space_from_obj(fileio.space_to_obj(problem.space)) == problem.space


def test_factorized_space_round_trip(tmp_path):
    obj = {
        "space": {
            "variables": [
                {"name": "toss1", "values": ["H", "T"]},
                {"name": "toss2", "values": ["H", "T"]},
            ]
        }
    }
    problem = fileio.load_problem(write(tmp_path, "c.json", obj))
    assert problem.space.atoms == ("HH", "HT", "TH", "TT")
    assert fileio.space_from_obj(fileio.space_to_obj(problem.space)) == problem.space


@pytest.mark.parametrize(
    "form,expected",
    [
        ({"vertices": ["u"]}, VertexSet),
        ({"vertices": [[0.1, 0.2, 0.3, 0.4]]}, VertexSet),
        ({"constraints": [{"coeffs": [1, 0, 0, 0], "rel": "<=", "rhs": 0.5}]}, LinearSystem),
        ({"intervals": "box"}, LinearSystem),
        (
            {"family": {"branches": [{"generator": "iid-coin", "lo": 0.1, "hi": 0.5, "params": {"n_tosses": 2}}]}},
            ParametricFamily,
        ),
    ],
)
def test_credal_forms(tmp_path, form, expected):
    obj = dict(PROBLEM)
    if expected is ParametricFamily:
        obj = {
            "space": {
                "variables": [
                    {"name": "toss1", "values": ["H", "T"]},
                    {"name": "toss2", "values": ["H", "T"]},
                ]
            }
        }
    problem = fileio.load_problem(write(tmp_path, "p.json", obj))
    S = fileio.credal_from_obj(form, problem)
    assert isinstance(S, expected)
    # credal_to_obj output loads back to the same kind of set
    again = fileio.credal_from_obj(fileio.credal_to_obj(S), problem)
    assert type(again) is type(S)


def test_mass_function_file(tmp_path):
    path = write(
        tmp_path,
        "m.json",
        {
            "space": {"atoms": ["1", "2", "3", "4", "5", "6"]},
            "masses": [
                {"set": ["1"], "m": 1 / 12},
                {"set": ["2"], "m": 1 / 12},
                {"set": ["1", "2"], "m": 1 / 6},
                {"set": ["3"], "m": 1 / 6},
                {"set": ["4"], "m": 1 / 6},
                {"set": ["5"], "m": 1 / 6},
                {"set": ["6"], "m": 1 / 6},
            ],
        },
    )
    m = fileio.load_mass_function(path)
    assert m.mass_of("1", "2") == pytest.approx(1 / 6)


def test_decision_file(tmp_path):
    path = write(
        tmp_path,
        "d.json",
        {
            "space": {"atoms": ["c1", "c2", "c3"]},
            "distributions": {"p1": [0.125, 0.75, 0.125], "p2": [0.75, 0.125, 0.125]},
            "utilities": {"actions": ["a1", "a2"], "matrix": [[3, 3, 4], [2.5, 3.5, 5]]},
            "credal": {"vertices": ["p1", "p2"]},
            "members": ["p1", "p2"],
        },
    )
    dp = fileio.load_decision(path)
    assert dp.utilities.actions == ("a1", "a2")
    assert isinstance(dp.credal, VertexSet)
    assert len(dp.members) == 2


def test_pooling_file(tmp_path):
    path = write(
        tmp_path,
        "pool.json",
        {
            "space": {
                "variables": [
                    {"name": "toss1", "values": ["H", "T"]},
                    {"name": "toss2", "values": ["H", "T"]},
                ]
            },
            "experts": {"low": [0.01, 0.09, 0.09, 0.81], "high": [0.25, 0.25, 0.25, 0.25]},
            "weights": [0.5, 0.5],
        },
    )
    prob = fileio.load_pooling(path)
    assert prob.names == ("low", "high")


def test_book_file(tmp_path):
    path = write(
        tmp_path,
        "b.json",
        {
            "space": {
                "variables": [
                    {"name": "toss1", "values": ["H", "T"]},
                    {"name": "toss2", "values": ["H", "T"]},
                ]
            },
            "tickets": [
                {"side": "buy", "price_cents": 1300, "payout_cents": 10000, "event": ["HH"]}
            ],
        },
    )
    book, problem = fileio.load_book(path)
    assert book.tickets[0].price == 13.00
    assert book.tickets[0].event.atoms == ("HH",)


@pytest.mark.parametrize(
    "obj,message",
    [
        ({}, "needs a space"),
        ({"space": {}}, "atoms or variables"),
        ({"space": {"atoms": ["a", "a"]}}, "unique"),
        ({"space": {"atoms": ["a", "b"]}, "distributions": {"bad": "nope"}}, "must be a list"),
    ],
)
def test_parse_errors(tmp_path, obj, message):
    with pytest.raises(ParseError, match=message):
        fileio.problem_from_obj(obj)


def test_invalid_json_raises_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        fileio.load_json(str(path))
    with pytest.raises(ParseError):
        fileio.load_json(str(tmp_path / "missing.json"))
