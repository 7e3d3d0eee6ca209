import pytest
from hypothesis import given

from conftest import elements
from skein.algebra import Element, IndexOutOfRange, InvalidSymbol, expand_sii, format_element, s, t
from skein.parser import SyntaxError as ParseError
from skein.parser import parse_element, parse_symbol
from skein.qring import ALPHA, BETA, ONE, qpow


def test_juxtaposition_is_noncommutative():
    assert parse_element("s24 s13", 4) == Element({(s(2, 4), s(1, 3)): ONE})
    assert parse_element("s24 s13", 4) != parse_element("s13 s24", 4)


def test_sii_macro():
    assert parse_element("a - b * t2 t2", 2) == parse_element("s22", 2) == expand_sii(2)


def test_triple_square():
    assert parse_element("s123 s123", 3) == Element({(s(1, 2, 3), s(1, 2, 3)): ONE})


def test_precedence():
    assert parse_element("2 + 3 * 4", 1) == Element.scalar(ONE * 14)
    assert parse_element("-s12^2", 2) == -Element({(s(1, 2), s(1, 2)): ONE})
    assert parse_element("q^{3/2} t1 - q^-1 t1", 1) == Element.gen(t(1)).scale(qpow(3) - qpow(-2))
    assert parse_element("a b", 1) == Element.scalar(ALPHA * BETA)


def test_braced_labels():
    assert parse_element("s{10,12} t{3}", 12) == Element({(s(10, 12), t(3)): ONE})
    assert parse_symbol("s{10,12,13}") == s(10, 12, 13)


@pytest.mark.parametrize("text, offset", [("s12 +", 5), ("s12 * (s13", 10), ("s12 # s13", 4), ("é s12", 0)])
def test_syntax_errors_carry_byte_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_element(text, 4)
    assert info.value.offset == offset


def test_invalid_symbols():
    with pytest.raises(InvalidSymbol):
        parse_element("s1 s12", 3)
    with pytest.raises(InvalidSymbol):
        parse_element("s112", 3)
    with pytest.raises(IndexOutOfRange):
        parse_element("s15", 4)


@given(elements(n=6, max_len=4))
def test_parse_print_round_trip(e):
    assert parse_element(format_element(e), 6) == e
