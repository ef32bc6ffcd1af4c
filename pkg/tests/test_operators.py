import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speccalc.c0 import Vec0, standard_system, validate_orthosystem
from speccalc.field import ONE, T, ZERO, FieldElem, NormExp
from speccalc.operators import (
    MismatchedSystem,
    OpSY,
    check_self_adjoint,
    norm_by_basis,
    op_compose,
    op_norm,
    op_power,
    op_scale,
)
from strategies import operators, vectors

Y = validate_orthosystem([Vec0.of(ONE, T), Vec0.of(-T, ONE), Vec0.basis(3)])


def test_apply_on_standard_basis():
    S = OpSY(FieldElem.const(2), (T, T ** 2), standard_system(2))
    assert S(Vec0.basis(1)) == Vec0.of(T + 2)
    assert S(Vec0.basis(5)) == Vec0.from_mapping({5: FieldElem.const(2)})


def test_composition_rule():
    s = standard_system(2)
    A = OpSY(ONE, (T, ZERO), s)
    B = OpSY(T, (ONE, T), s)
    # (1, (t, 0)) (t, (1, t)) = (t, (1*1 + t*t + t*1, 1*t + t*0 + 0))
    assert A @ B == OpSY(T, (ONE + T + T * T, T), s)
    assert (A @ B) == (B @ A)


def test_norm_with_cancellation_on_window():
    # alpha = -t, lambda = t: S kills e1 but alpha still acts beyond the window
    S = OpSY(-T, (T,), standard_system(1))
    assert S(Vec0.basis(1)) == Vec0()
    assert op_norm(S) == NormExp(1) == norm_by_basis(S)


def test_norm_on_tilted_system():
    S = OpSY.projection(Y, [1])
    assert op_norm(S) == NormExp(0) == norm_by_basis(S)
    S = OpSY(ZERO, (T ** -1, T, ZERO), Y)
    assert op_norm(S) == NormExp(-1) == norm_by_basis(S)


def test_projection_is_idempotent():
    P = OpSY.projection(Y, [1, 3])
    assert P @ P == P
    assert (OpSY.identity(Y) - P) @ P == OpSY.zero(Y)


def test_mismatched_systems_rejected():
    with pytest.raises(MismatchedSystem):
        OpSY.identity(Y) + OpSY.identity(standard_system(3))
    with pytest.raises(ValueError):
        OpSY(ZERO, (ONE,), Y)


def test_power_validation():
    with pytest.raises(ValueError):
        op_power(OpSY.identity(Y), 0)


def test_self_adjoint_checks():
    assert check_self_adjoint(OpSY(T, (ONE, T, T ** 2), Y))

    def shift(x):
        return Vec0.from_mapping([(i + 1, v) for i, v in x.entries])

    assert not check_self_adjoint(shift, base=[1, 2, 3])

    def diagonal(x):
        return Vec0.from_mapping([(i, v * i) for i, v in x.entries])

    assert check_self_adjoint(diagonal, base=[1, 2, 3])


def test_str():
    assert str(OpSY(ONE, (T, ZERO), standard_system(2))) == "alpha=1 lambda=[t, 0]"


@settings(max_examples=100, deadline=None)
@given(operators())
def test_norm_formula_matches_basis_images(S):
    assert op_norm(S) == norm_by_basis(S)


@settings(max_examples=60, deadline=None)
@given(operators(rank=3), st.integers(min_value=2, max_value=5))
def test_power_multiplicative(S, n):
    assert op_norm(op_power(S, n)) == op_norm(S).power(n)


@settings(max_examples=60, deadline=None)
@given(operators(rank=3), operators(rank=3), vectors(max_len=4))
def test_composition_agrees_with_application(A, B, x):
    assert op_compose(A, B)(x) == A(B(x))
    assert (A + B)(x) == A(x) + B(x)
    assert op_scale(T, A)(x) == A(x).scale(T)


@settings(max_examples=60, deadline=None)
@given(operators(rank=3), operators(rank=3))
def test_algebra_is_commutative_and_normed(A, B):
    assert A @ B == B @ A
    assert op_norm(A @ B).exponent >= op_norm(A).exponent + op_norm(B).exponent
