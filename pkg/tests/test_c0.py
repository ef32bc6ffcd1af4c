from fractions import Fraction

import pytest
from hypothesis import given, settings

from speccalc.c0 import (
    NotOrthogonal,
    NotUnitNorm,
    Vec0,
    ZeroVector,
    inner_norm,
    inner_product,
    normal_projection_apply,
    standard_system,
    sup_norm,
    validate_orthosystem,
)
from speccalc.field import ONE, T, ZERO, FieldElem, NormExp
from strategies import field_elems, vectors

Y1 = Vec0.of(ONE, T)
Y2 = Vec0.of(-T, ONE)


def test_vector_storage_is_sparse_and_sorted():
    v = Vec0.from_mapping([(3, T), (1, ONE), (3, -T), (2, ZERO)])
    assert v.entries == ((1, ONE),)
    assert v[3] == ZERO and v[1] == ONE
    with pytest.raises(ValueError):
        Vec0.from_mapping({0: ONE})


def test_inner_product_and_norms():
    assert inner_product(Y1, Y2) == ZERO
    assert inner_product(Y1, Y1) == ONE + T * T
    x = Vec0.of(T, T ** 2)
    assert sup_norm(x) == NormExp(1)
    assert inner_norm(x) == NormExp(1)
    assert sup_norm(Vec0()).is_zero


def test_normal_projection_worked_example():
    # P_{y1}(e1) = <e1, y1>/<y1, y1> y1 = (1, t)/(1 + t^2)
    got = normal_projection_apply(Y1, Vec0.basis(1))
    c = ONE / (ONE + T * T)
    assert got == Vec0.of(c, c * T)
    with pytest.raises(ZeroVector):
        normal_projection_apply(Vec0(), Y1)


def test_validate_orthosystem():
    system = validate_orthosystem([Y1, Y2, Vec0.basis(4)])
    assert len(system) == 3
    assert system.window == (1, 2, 4)
    with pytest.raises(NotUnitNorm) as info:
        validate_orthosystem([Vec0.of(T, T ** 2)])
    assert info.value.args
    with pytest.raises(NotOrthogonal):
        validate_orthosystem([Y1, Vec0.basis(1)])
    with pytest.raises(NotUnitNorm):
        validate_orthosystem([Vec0()])


def test_projection_onto_members_fixes_them():
    system = validate_orthosystem([Y1, Y2])
    assert system.project(1, Y1) == Y1
    assert system.project(1, Y2) == Vec0()
    # the two projections sum to the identity on span{e1, e2}
    e1 = Vec0.basis(1)
    assert system.project(1, e1) + system.project(2, e1) == e1


@settings(max_examples=150, deadline=None)
@given(vectors())
def test_norm_coincidence(x):
    # valuation <x, x> = 2 * sup-norm exponent
    assert inner_norm(x) == sup_norm(x)
    if not x.is_zero():
        assert inner_product(x, x).valuation() == 2 * sup_norm(x).exponent


@settings(max_examples=150, deadline=None)
@given(vectors(), vectors(), field_elems())
def test_inner_product_bilinear_and_bounded(x, y, c):
    assert inner_product(x, y) == inner_product(y, x)
    assert inner_product(x.scale(c), y) == c * inner_product(x, y)
    assert inner_product(x + y, y) == inner_product(x, y) + inner_product(y, y)
    assert inner_product(x, y).valuation() >= sup_norm(x).exponent + sup_norm(y).exponent


@settings(max_examples=100, deadline=None)
@given(vectors(), vectors())
def test_sup_norm_ultrametric(x, y):
    assert sup_norm(x + y) <= max(sup_norm(x), sup_norm(y))


@settings(max_examples=100, deadline=None)
@given(vectors())
def test_normal_projection_idempotent(x):
    p = normal_projection_apply(Y1, x)
    assert normal_projection_apply(Y1, p) == p
    assert inner_product(x - p, Y1) == ZERO


def test_standard_system():
    s = standard_system(3)
    assert s.members == (Vec0.basis(1), Vec0.basis(2), Vec0.basis(3))
    assert s.gram_diag == (ONE, ONE, ONE)


def test_inner_norm_halves_the_valuation():
    assert inner_norm(Vec0.of(T ** 3, T ** 5)) == NormExp(Fraction(6, 2))
    assert inner_norm(Vec0()).is_zero
