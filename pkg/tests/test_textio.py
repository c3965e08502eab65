from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affprob.convex import SimplexPoint
from affprob.giry import CountableMeasure, Measure
from affprob.spaces import NATURALS, FiniteSpace, IFunction
from affprob.textio import (
    Document,
    FunctionalSpec,
    ParseError,
    format_document,
    format_measure,
    format_simplex_point,
    measure_to_json,
    parse_document,
    parse_simplex_point,
)

F = Fraction

SAMPLE = """\
# a commented fixture
points 3
atom 0: 0 2
atom 1: 1
P: atom0=1/2 atom1=1/2
function f
atom 0: 1/3
atom 1: 1
functional canonical
P: atom0=1/4 atom1=3/4
functional adversarial max-over-atoms
"""


def test_parse_sample():
    doc = parse_document(SAMPLE)
    assert doc.space == FiniteSpace(3, (frozenset({0, 2}), frozenset({1})))
    assert doc.measures == [Measure(doc.space, (F(1, 2), F(1, 2)))]
    assert doc.functions["f"] == IFunction(doc.space, (F(1, 3), F(1)))
    assert [s.kind for s in doc.functionals] == ["canonical", "adversarial"]
    assert doc.functionals[1].declared_failures == {"affine"}
    assert doc.functionals[0].build(doc.space).eval(doc.functions["f"]) == F(1, 4) * F(1, 3) + F(3, 4)


def test_format_then_parse_is_identity():
    doc = parse_document(SAMPLE)
    text = format_document(doc)
    again = parse_document(text)
    assert format_document(again) == text
    assert again.measures == doc.measures and again.functions == doc.functions


def test_naturals_document():
    p = CountableMeasure(((0, F(1, 2)), (7, F(1, 2))))
    doc = Document(NATURALS, measures=[p], functionals=[FunctionalSpec("adversarial", "tail-mixture", p)])
    text = format_document(doc)
    assert "P: point0=1/2 point7=1/2" in text
    back = parse_document(text)
    assert back.measures == [p] and back.space is NATURALS


def test_measure_text_form():
    assert format_measure(Measure(FiniteSpace.discrete(2), (F(1, 2), F(1, 2)))) == "P: atom0=1/2 atom1=1/2\n"
    assert measure_to_json(Measure(FiniteSpace.discrete(1), (F(1),)))["masses"] == {"atom0": "1"}


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("", 1, "empty"),
        ("pints 3\n", 1, "expected 'points N'"),
        ("points 2\natom 0: 0\natom 1: 1\nP: atom0=1/2 atom1=1/3\n", 4, "sum"),
        ("points 2\natom 0: 0 1\nP: atom0=3/2\n", 3, "outside"),
        ("points 2\natom 0: 0\natom 1: 1\n\n# note\nfunction f\natom 0: 1\natom 1: x\n", 8, "x"),
        ("points 2\natom 0: 0\natom 2: 1\n", 3, "expected atom 1"),
        ("points 2\natom 0: 0 1\nfunctional canonical\n", 3, "needs a following"),
        ("points 2\natom 0: 0 1\nfunctional adversarial nope\n", 3, "unknown adversarial kind"),
        ("points 2\natom 0: 0 1\nhello\n", 3, "unexpected line"),
        ("naturals\nfunctional adversarial max-over-atoms\n", 2, "does not live"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_document(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")
    assert fragment in str(exc.value)


def test_simplex_point_text():
    p = SimplexPoint((F(1, 6), F(1, 6), F(2, 3)))
    assert format_simplex_point(p) == "p: 1/6 1/6 2/3"
    assert parse_simplex_point("p: 1/6 1/6 2/3") == p
    with pytest.raises(ValueError):
        parse_simplex_point("1/2 1/2")


@given(st.lists(st.integers(1, 9), min_size=1, max_size=5))
def test_measure_round_trip(weights):
    total = sum(weights)
    space = FiniteSpace.discrete(len(weights))
    p = Measure(space, tuple(F(w, total) for w in weights))
    assert parse_document(format_document(Document(space, measures=[p]))).measures == [p]
