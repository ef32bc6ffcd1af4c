import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speccalc.c0 import Vec0, standard_system
from speccalc.field import ONE, T, ZERO, FieldElem
from speccalc.measure import CFunc, Clopen, TaggedPartition, UnknownPoint, indicator
from speccalc.operators import OpSY
from speccalc.parsing import ParseError
from speccalc.serialize import (
    cfunc_to_json,
    clopen_from_json,
    clopen_to_json,
    func_spec_from_json,
    op_from_json,
    op_to_json,
    parse_func_expr,
    partition_from_json,
    partition_to_json,
    vec_from_json,
    vec_to_json,
)
from speccalc.spectral import spectrum_of
from strategies import field_elems, operators, vectors

S3 = standard_system(3)
SIGMA = spectrum_of(OpSY(ZERO, (T, T ** 2, ZERO), S3))


def _through_json(obj):
    return json.loads(json.dumps(obj))


def test_func_expr_examples():
    assert parse_func_expr("poly: x", SIGMA).same_on(CFunc.identity(SIGMA), SIGMA)
    assert parse_func_expr("poly: 1", SIGMA).on(SIGMA) == {0: ONE, 1: ONE, 2: ONE}
    got = parse_func_expr("indicator: {points:[p1], includes_zero:false}", SIGMA)
    assert got == indicator(Clopen(False, {1}), SIGMA)


def test_func_expr_tables():
    f = parse_func_expr("table: {p0: 1, p2: 1/t}", SIGMA)
    assert f.on(SIGMA) == {0: ONE, 1: ONE, 2: T ** -1}
    g = parse_func_expr('table: {"at_zero": "2", "values": {"p1": "t"}}', SIGMA)
    assert g.on(SIGMA) == {0: FieldElem.const(2), 1: T, 2: FieldElem.const(2)}
    with pytest.raises(UnknownPoint):
        parse_func_expr("table: {p5: 1}", SIGMA)


def test_func_expr_object_forms():
    f = func_spec_from_json({"poly": ["1", "0", "t"]})(SIGMA)
    assert f.on(SIGMA) == {0: ONE, 1: ONE + T ** 3, 2: ONE + T ** 5}
    h = func_spec_from_json({"indicator": {"includes_zero": True}})(SIGMA)
    assert h.on(SIGMA) == {0: ONE, 1: ZERO, 2: ZERO}


@pytest.mark.parametrize(
    "text",
    ["x^2", "poly x", "poly: x +", "table: {p1 1}", "table: [1, 2]", "indicator: {points:[q1]}", "table: {p1: (1}"],
)
def test_func_expr_parse_errors(text):
    with pytest.raises(ParseError):
        parse_func_expr(text, SIGMA)


def test_poly_error_positions_are_relative_to_whole_text():
    with pytest.raises(ParseError) as info:
        parse_func_expr("poly: x + $", SIGMA)
    assert info.value.position == 10


@settings(max_examples=80, deadline=None)
@given(vectors())
def test_vector_round_trip(v):
    assert vec_from_json(_through_json(vec_to_json(v))) == v


@settings(max_examples=80, deadline=None)
@given(operators(rank=3))
def test_operator_round_trip(S):
    assert op_from_json(_through_json(op_to_json(S)), S3) == S


@settings(max_examples=50, deadline=None)
@given(st.sets(st.integers(0, 6)))
def test_clopen_round_trip(ids):
    C = Clopen.from_ids(ids)
    assert clopen_from_json(_through_json(clopen_to_json(C))) == C


@settings(max_examples=50, deadline=None)
@given(field_elems(), field_elems(), field_elems())
def test_cfunc_round_trip(a, b, c):
    f = CFunc.table(a, {1: b, 2: c})
    back = func_spec_from_json(_through_json(cfunc_to_json(f)))(SIGMA)
    assert back.same_on(f, SIGMA)


def test_partition_round_trip():
    part = TaggedPartition.of([(Clopen(True, {1}), 0), (Clopen(False, {2}), 2)])
    assert partition_from_json(_through_json(partition_to_json(part))) == part


def test_bad_payloads():
    with pytest.raises(ParseError):
        vec_from_json({"0": "1"})
    with pytest.raises(ParseError):
        vec_from_json({"a": "1"})
    with pytest.raises(ParseError):
        op_from_json({"alpha": "1", "lambda": ["1"]}, S3)
    with pytest.raises(ParseError):
        clopen_from_json({"includes_zero": "yes"})
    assert vec_from_json({"2": 3}) == Vec0.from_mapping({2: FieldElem.const(3)})
