import json

import pytest

from grpdtest import adjoints, corpus, fincat, io
from grpdtest import presheaf as ps
from grpdtest.errors import MissingComposite, ParseError, ValidationError


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_round_trips_byte_identically(name):
    text = corpus.text(name)
    assert io.dumps(io.loads(text)) == text


def test_round_trip_of_built_values(cat):
    A = cat("delta1")
    values = [
        fincat.cyclic_group(4),
        fincat.to_terminal(cat("J"), cat("e")),
        ps.product(ps.representable(A, "1"), ps.constant(A, cat("BG2"))),
        ps.identity_morphism(ps.representable(A, "1")),
        adjoints.slice_diagram(cat("delta2")),
        adjoints.lawvere_interval(adjoints.slice_diagram(A)),
    ]
    for v in values:
        text = io.dumps(v)
        assert io.dumps(io.loads(text)) == text


def test_identities_are_implied():
    doc = {"kind": "category", "body": {"objects": ["a", "b"], "morphisms": {"f": ["a", "b"]}, "compose": []}}
    C = io.loads(json.dumps(doc))
    assert C.identity("a") == "id_a" and len(C.morphisms) == 3


def test_long_morphism_form():
    body = {"objects": ["a", "b"], "morphisms": [{"id": "f", "src": "a", "tgt": "b"}],
            "identities": {"a": "ia", "b": "ib"}, "compose": []}
    C = io.loads(json.dumps({"kind": "category", "body": body}))
    assert C.ends("f") == ("a", "b") and C.identity("b") == "ib"
    body["morphisms"] = [{"id": "f"}]
    with pytest.raises(ParseError):
        io.loads(json.dumps({"kind": "category", "body": body}))


def test_corpus_reference():
    doc = {"kind": "presheaf", "body": {"construct": "terminal", "base": "corpus:delta2"}}
    X = io.loads(json.dumps(doc))
    assert X.base == corpus.load_category("delta2")


def test_parse_error_reports_line_and_field():
    text = ('{"kind": "category",\n"body": {"objects": ["a", "b"],\n'
            '"morphisms": {"f": ["a", "b"]},\n"compose": [["f", "f"]]}}')
    with pytest.raises(ParseError) as info:
        io.loads(text)
    assert info.value.line == 4
    assert info.value.field == "body.compose[0]"
    assert "line 4" in str(info.value)


def test_bad_json_and_kind():
    with pytest.raises(ParseError) as info:
        io.loads("{bad")
    assert info.value.line == 1
    with pytest.raises(ParseError):
        io.loads('{"kind": "sheaf", "body": {}}')
    with pytest.raises(ParseError):
        io.loads('{"body": {}}')


def test_validation_errors_propagate():
    doc = {"kind": "category", "body": {"objects": ["a"], "morphisms": {"s": ["a", "a"]}, "compose": []}}
    with pytest.raises(MissingComposite):
        io.loads(json.dumps(doc))
    bad_product = io.category_to_body(corpus.load_category("delta1xdelta1"))
    bad_product["factors"][1] = io.category_to_body(corpus.load_category("e"))
    with pytest.raises(ValidationError):
        io.loads(json.dumps({"kind": "category", "body": bad_product}))


def test_kind_of():
    assert io.kind_of(fincat.terminal()) == "category"
    with pytest.raises(TypeError):
        io.kind_of(3)


def test_product_factors_survive(cat):
    P = io.loads(io.dumps(fincat.product(cat("delta1"), cat("BG2"))))
    assert P.factors is not None and P.factors[1] == cat("BG2")
