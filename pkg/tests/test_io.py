import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA
from loctrop.core import Series
from loctrop.errors import ParseError
from loctrop.io import dumps, load_problem, parse_document, parse_text, series_document


def _doc(**kw):
    base = {"vars": ["x", "y"], "terms": [{"c": "1", "e": [1, 1]}], "exact": True}
    base.update(kw)
    return base


def test_worked_example_input():
    pr = load_problem(DATA / "example_paper.json")
    assert pr.variables == ("x", "y") and pr.n == 2 and not pr.exact
    (f,) = pr.generators
    assert f.truncation == 4 and f.coeff((3, 1)) == Fraction(1, 6)


def test_generators_input():
    pr = load_problem(DATA / "ideal_n3.json")
    assert pr.n == 3 and len(pr.generators) == 2 and pr.exact and not pr.principal


@pytest.mark.parametrize("doc, fragment", [
    (_doc(exact=None), "exactly one"),
    (_doc(truncation_degree=3), "exactly one"),
    (_doc(terms=[{"c": "1/0", "e": [1, 1]}]), "zero denominator"),
    (_doc(terms=[{"c": "1", "e": [1, 1, 1]}]), "expected 2"),
    (_doc(terms=[{"c": "1", "e": [1, 1]}, {"c": "2", "e": [1, 1]}]), "repeated exponent"),
    (_doc(exact=None, truncation_degree=1), "exceeds truncation degree"),
    (_doc(terms=[{"c": "0.5", "e": [1, 1]}]), "$.terms[0].c"),
    (_doc(terms=[{"c": "1", "e": [-1, 1]}]), "$.terms[0].e[0]"),
    (_doc(vars=["x", "x"]), "distinct"),
    (_doc(extra=1), "$"),
])
def test_semantic_and_schema_errors(doc, fragment):
    doc = {k: v for k, v in doc.items() if v is not None}
    with pytest.raises(ParseError) as exc:
        parse_document(doc, "in.json")
    assert fragment in str(exc.value)
    assert str(exc.value).startswith("in.json")


def test_json_syntax_error_position():
    with pytest.raises(ParseError) as exc:
        parse_text('{"vars": ["x"],\n  "terms": [}', "bad.json")
    assert str(exc.value).startswith("bad.json:2:")


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_problem(tmp_path / "nope.json")


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(lambda c: c != 0)
term_maps = st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)), coeffs, min_size=1, max_size=6)


@settings(max_examples=80, deadline=None)
@given(term_maps, st.one_of(st.none(), st.integers(10, 12)))
def test_series_round_trip(terms, trunc):
    f = Series(2, terms, trunc)
    doc = series_document(f, ("x", "y"))
    back = parse_text(json.dumps(doc)).generators[0]
    assert back == f and back.truncation == f.truncation
