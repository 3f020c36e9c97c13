from fractions import Fraction

import pytest

from equisym.errors import NotAdmissibleError, ParseError
from equisym.signature import (
    Signature,
    enumerate_signatures,
    format_signature,
    parse_signature,
    rh_genus,
    rh_value,
    teich_dim,
)


def test_parse_and_format():
    sig = parse_signature("0;2^6,5")
    assert sig == Signature(0, (2, 2, 2, 2, 2, 2, 5))
    assert format_signature(sig) == "0;2,2,2,2,2,2,5"
    assert parse_signature("(1; 2, 2, 2, 2)") == Signature(1, (2, 2, 2, 2))
    assert format_signature(parse_signature("2;-")) == "2;-"


@pytest.mark.parametrize("text", ["0,2,2", "x;2", "0;1,2", "0;2^x"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ValueError)):
        parse_signature(text)


def test_periods_are_sorted():
    assert Signature(0, (5, 2, 3)).periods == (2, 3, 5)


def test_teich_dim():
    assert teich_dim(parse_signature("0;2^6")) == 3
    assert teich_dim(parse_signature("1;2^4")) == 4
    assert teich_dim(parse_signature("0;2,3,7")) == 0


def test_riemann_hurwitz():
    assert rh_genus(parse_signature("0;2,3,7"), 168) == 3
    assert rh_genus(parse_signature("0;2^6"), 10) == 6
    assert rh_genus(parse_signature("1;2^4"), 6) == 7
    assert rh_value(parse_signature("0;2,3,7"), 84) == Fraction(2)
    with pytest.raises(NotAdmissibleError) as exc:
        rh_genus(parse_signature("0;2,3,7"), 85)
    assert exc.value.value == rh_value(parse_signature("0;2,3,7"), 85)


def test_enumerate_signatures_dim3():
    for g in (6, 8, 12, 14):
        assert [format_signature(s) for s in enumerate_signatures(g, 2 * g - 2, 3)] == ["0;2,2,2,2,2,2"]


def test_enumerate_signatures_dim4():
    for g in (6, 10, 14):
        assert enumerate_signatures(g, g, 4) == [parse_signature(f"0;2^6,{g // 2}")]
    assert enumerate_signatures(4, 4, 4) == [parse_signature("0;2^7")]
    assert set(enumerate_signatures(5, 4, 4)) == {parse_signature("0;2^5,4,4"), parse_signature("1;2^4")}


def test_enumerate_signatures_is_exact():
    # every reported signature has the asked dimension and genus
    for g in range(2, 9):
        for N in range(1, 40):
            for sig in enumerate_signatures(g, N, 2):
                assert teich_dim(sig) == 2
                assert rh_genus(sig, N) == g
