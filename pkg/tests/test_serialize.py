import json

import pytest
from hypothesis import given

from sepfol.bounds import OVERFLOW
from sepfol.decide import Sat, Unknown, Unsat
from sepfol.errors import SchemaError
from sepfol.semantics import Structure
from sepfol.serialize import parse_structure, print_report, print_structure
from sepfol.syntax import Signature

from strategies import structures_for


def test_round_trip_small():
    text = '{"universe": 2, "predicates": {"p": [[0]], "q": [[0]]}}'
    s = parse_structure(text)
    assert s == Structure(2, {}, {}, {"p": {(0,)}, "q": {(0,)}})
    out = print_structure(s)
    assert print_structure(parse_structure(out)) == out


def test_canonical_keys():
    s = Structure(11, {}, {"f": {(i,): 0 for i in range(11)}}, {})
    keys = list(json.loads(print_structure(s))["functions"]["f"])
    assert keys[:3] == ["[0]", "[1]", "[2]"] and keys[-1] == "[10]"


@pytest.mark.parametrize("text", [
    '{"universe": 2, "predicates": {"p": [[2]]}}',
    '{"universe": 0}',
    '{"universe": 2, "constants": {"c": -1}}',
    '{"universe": 2, "functions": {"f": {"[0]": 1}}}',
    '{"universe": 2, "bogus": 1}',
    '{"universe": 2, "predicates": {"p": [[0], [0, 1]]}}',
    'not json',
])
def test_schema_errors(text):
    with pytest.raises(SchemaError):
        parse_structure(text)


SIG = Signature({"p": 1, "r": 2, "t": 0}, {"f": 1}, frozenset({"c"}))


@given(structures_for(SIG))
def test_round_trip_property(s):
    text = print_structure(s)
    assert parse_structure(text) == s
    assert print_structure(parse_structure(text)) == text


def test_report_schema():
    data = json.loads(print_report(Sat(Structure(1, {}, {}, {"p": set()}), 1)))
    assert data["schema"] == 1 and data["verdict"] == "Sat" and data["model"]["universe"] == 1
    assert json.loads(print_report(Unsat(3)))["bound_checked"] == 3
    assert json.loads(print_report(Unknown("BoundOverflow")))["reason"] == "BoundOverflow"
    assert json.loads(print_report({"bound": OVERFLOW}))["bound"] == "Overflow"


def test_report_deterministic():
    r = Sat(Structure(2, {"c": 1}, {}, {"p": {(1,), (0,)}}), 2)
    assert print_report(r) == print_report(r)
