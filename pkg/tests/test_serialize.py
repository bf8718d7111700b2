import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtuples.correspondence import Correspondence, classify, symmetry_report
from dtuples.errors import ValidationError
from dtuples.fixtures import EXAMPLE1, EXAMPLE2A, EXAMPLE5, FIXTURES
from dtuples.gaussian import GaussianRational as G
from dtuples.serialize import (
    classification_doc,
    dumps,
    gaussian_doc,
    gaussian_load,
    load_matrix,
    matrix_text,
    save_matrix,
    symmetry_doc,
)

import gen


def test_display_layout():
    doc = save_matrix(EXAMPLE1.correspondence())
    assert doc["d"] == 5
    f = EXAMPLE1.correspondence()
    assert gaussian_load(doc["entries"][0][0]) == f.A[5][5]
    assert gaussian_load(doc["entries"][5][0]) == f.A[0][5]
    assert gaussian_load(doc["entries"][0][5]) == f.A[5][0]


def test_example5_round_trip():
    f = EXAMPLE5.correspondence()
    assert load_matrix(save_matrix(f)).A == f.A


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_round_trip_bytes(name):
    f = FIXTURES[name].correspondence()
    text = dumps(save_matrix(f))
    again = load_matrix(json.loads(text))
    assert again.A == f.A
    assert dumps(save_matrix(again)) == text


def test_big_integers_are_strings():
    z = G(Fraction(3**80, 7**40), Fraction(-1, 2**70))
    doc = gaussian_doc(z)
    assert isinstance(doc["re"]["num"], str)
    assert gaussian_load(json.loads(json.dumps(doc))) == z


@pytest.mark.parametrize(
    "doc",
    [
        {"re": {"num": "1", "den": "0"}, "im": {"num": "0", "den": "1"}},
        {"re": {"num": "1", "den": "-2"}, "im": {"num": "0", "den": "1"}},
        {"re": {"num": "1.5", "den": "1"}, "im": {"num": "0", "den": "1"}},
        {"re": {"num": "1"}, "im": {"num": "0", "den": "1"}},
        {"re": 1, "im": 0},
    ],
)
def test_malformed_rationals(doc):
    with pytest.raises(ValidationError):
        gaussian_load(doc)


def test_malformed_matrix_shape():
    with pytest.raises(ValidationError):
        load_matrix({"d": 2, "entries": [[gaussian_doc(G(1))] * 3] * 2})
    with pytest.raises(ValidationError):
        load_matrix({"entries": []})


def test_load_validates():
    zero = gaussian_doc(G(0))
    one = gaussian_doc(G(1))
    # x^1 y^1 only: a product of lines
    with pytest.raises(ValidationError):
        load_matrix({"d": 1, "entries": [[one, zero], [zero, zero]]})


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_round_trip_random(seed):
    import random

    f, _, _ = gen.rank2(random.Random(seed), 2 + seed % 3, 5)
    text = dumps(save_matrix(f))
    back = load_matrix(json.loads(text))
    assert back.A == f.A and dumps(save_matrix(back)) == text


def test_report_documents_deterministic():
    f = EXAMPLE2A.correspondence()
    a = dumps(classification_doc(classify(f)))
    b = dumps(classification_doc(classify(EXAMPLE2A.correspondence())))
    assert a == b and a.endswith("\n")
    s = dumps(symmetry_doc(symmetry_report(EXAMPLE5.correspondence())))
    assert json.loads(s)["hermitian_up_to_unimodular"] == gaussian_doc(G(-1))


def test_matrix_text_top_left():
    f = Correspondence([[G(-1), G(0)], [G(0), G(1)]])
    assert matrix_text(f).split("\n")[0].split() == ["1", "0"]
