"""Forbidden-state predicate parsing and evaluation."""

import pytest

from overseer import compile_predicate, parse_predicate, predicate_places
from overseer.errors import PnetSyntaxError, UnknownPlaceName

IDX = {"P1": 0, "P2": 1, "P3": 2}


def _truth(expr, bits):
    mask = sum(1 << i for i, b in enumerate(bits) if b)
    return compile_predicate(expr, IDX)(mask)


def test_single_place():
    assert _truth("P1", [1, 0, 0])
    assert not _truth("P1", [0, 1, 1])


def test_precedence_not_over_and_over_or():
    # !P1 & P2 | P3  ==  ((!P1) & P2) | P3
    for bits in [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]:
        expected = ((not bits[0]) and bits[1]) or bits[2]
        assert _truth("!P1 & P2 | P3", bits) == bool(expected)


def test_parentheses_override():
    assert _truth("!(P1 | P2)", [0, 0, 1])
    assert not _truth("!(P1 | P2)", [1, 0, 0])


def test_constants():
    assert _truth("true", [0, 0, 0])
    assert not _truth("false", [1, 1, 1])


def test_places_collected():
    node = parse_predicate("(P2 & P7) | (P5 & P6)")
    assert predicate_places(node) == {"P2", "P5", "P6", "P7"}


def test_unknown_place_rejected():
    with pytest.raises(UnknownPlaceName):
        compile_predicate("P9", IDX)


@pytest.mark.parametrize("expr", ["", "P1 &", "& P1", "(P1", "P1)", "P1 P2",
                                  "P1 && P2"])
def test_syntax_errors(expr):
    with pytest.raises(PnetSyntaxError):
        parse_predicate(expr)


def test_error_carries_column():
    with pytest.raises(PnetSyntaxError) as err:
        parse_predicate("P1 | | P2")
    assert err.value.column == 6
