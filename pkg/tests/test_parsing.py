import pytest
from hypothesis import given, settings

from speccalc.field import ONE, T, ZERO, DivisionByZero, FieldElem
from speccalc.parsing import ParseError, parse_field_expr, parse_poly_expr
from speccalc.polyx import PolyX, interpolate
from strategies import field_elems


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", ZERO),
        ("1", ONE),
        ("t", T),
        ("3/4", FieldElem.const(3) / 4),
        ("(1+t)/(2*t^3)", FieldElem([1, 1], [0, 0, 0, 2])),
        ("2*t - t^2", FieldElem([0, 2, -1])),
        ("t^-2", T ** -2),
        ("-(1 - t)", T - 1),
        ("1 - 2 - 3", FieldElem.const(-4)),
        ("12/4/3", ONE),
        ("  t  *  t ", T * T),
    ],
)
def test_field_expressions(text, expected):
    assert parse_field_expr(text) == expected


def test_zero_denominator():
    with pytest.raises(DivisionByZero):
        parse_field_expr("1/(t-t)")
    with pytest.raises(DivisionByZero):
        parse_field_expr("1/0")


@pytest.mark.parametrize("text, pos", [("1 +", 3), ("(1 + t", 6), ("t $ 2", 2), ("y", 0), ("", 0), ("t^t", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_field_expr(text)
    assert info.value.position == pos


def test_poly_expressions():
    p = parse_poly_expr("x^2 + t*x - 1/t")
    assert p == PolyX([-(T ** -1), T, ONE])
    assert p(ONE) == ONE + T - T ** -1
    assert parse_poly_expr("1").degree() == 0
    assert parse_poly_expr("x/2") == PolyX([ZERO, FieldElem.const(1) / 2])
    with pytest.raises(ParseError):
        parse_poly_expr("1/x")


@settings(max_examples=100, deadline=None)
@given(field_elems(), field_elems())
def test_arithmetic_text_matches_arithmetic(a, b):
    assert parse_field_expr(f"({a}) * ({b}) - ({b})") == a * b - b


def test_interpolation_through_nodes():
    nodes = [ZERO, T, T ** 2, ONE + T]
    values = [ONE, T ** -1, FieldElem.const(5), T]
    p = interpolate(nodes, values)
    assert p.degree() <= 3
    assert [p(x) for x in nodes] == values
    with pytest.raises(ValueError):
        interpolate([T, T], [ONE, ZERO])
