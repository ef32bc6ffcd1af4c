"""The commutative unital algebra of operators alpha*I + T_lambda.

T_lambda = sum_i lambda_i P_i where P_i is the normal projection onto the
i-th member of a fixed orthonormal system.  Operators are kept in this
diagonal form; composition uses the unitization product

    (a1 I + T_mu)(a2 I + T_nu) = a1 a2 I + T_{a1 nu + a2 mu + mu nu}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .c0 import OrthoSystem, Vec0, inner_product, sup_norm
from .field import ONE, ZERO, FieldElem, NormExp, max_magnitude


class MismatchedSystem(ValueError):
    """Operators built over different orthonormal systems were combined."""


@dataclass(frozen=True)
class OpSY:
    alpha: FieldElem
    lam: tuple[FieldElem, ...]
    system: OrthoSystem

    def __post_init__(self):
        if len(self.lam) != len(self.system):
            raise ValueError(
                f"lambda has {len(self.lam)} entries but the system has {len(self.system)} members"
            )

    # -- constructors ------------------------------------------------------
    @classmethod
    def make(cls, system: OrthoSystem, lam: Sequence = (), alpha=ZERO) -> "OpSY":
        lam = tuple(_fe(v) for v in lam) if lam else (ZERO,) * len(system)
        return cls(_fe(alpha), lam, system)

    @classmethod
    def identity(cls, system: OrthoSystem) -> "OpSY":
        return cls(ONE, (ZERO,) * len(system), system)

    @classmethod
    def zero(cls, system: OrthoSystem) -> "OpSY":
        return cls(ZERO, (ZERO,) * len(system), system)

    @classmethod
    def scalar(cls, system: OrthoSystem, c) -> "OpSY":
        return cls(_fe(c), (ZERO,) * len(system), system)

    @classmethod
    def projection(cls, system: OrthoSystem, indices) -> "OpSY":
        """sum of P_j over the given 1-based indices."""
        chosen = set(indices)
        return cls(ZERO, tuple(ONE if i in chosen else ZERO for i in range(1, len(system) + 1)), system)

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "OpSY") -> "OpSY":
        return op_add(self, other)

    def __sub__(self, other: "OpSY") -> "OpSY":
        return op_add(self, op_scale(-ONE, other))

    def __neg__(self) -> "OpSY":
        return op_scale(-ONE, self)

    def __matmul__(self, other: "OpSY") -> "OpSY":
        return op_compose(self, other)

    def __call__(self, x: Vec0) -> Vec0:
        return op_apply(self, x)

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and all(v.is_zero() for v in self.lam)

    def __str__(self) -> str:
        return f"alpha={self.alpha} lambda=[{', '.join(str(v) for v in self.lam)}]"


def _fe(v) -> FieldElem:
    return v if isinstance(v, FieldElem) else FieldElem.const(v)


def _check_same(s1: OpSY, s2: OpSY) -> None:
    if s1.system is not s2.system and s1.system != s2.system:
        raise MismatchedSystem("operators are defined over different orthonormal systems")


def op_apply(S: OpSY, x: Vec0) -> Vec0:
    out = x.scale(S.alpha)
    for i, lam in enumerate(S.lam, start=1):
        if not lam.is_zero():
            out = out + S.system.project(i, x).scale(lam)
    return out


def op_add(S1: OpSY, S2: OpSY) -> OpSY:
    _check_same(S1, S2)
    return OpSY(S1.alpha + S2.alpha, tuple(a + b for a, b in zip(S1.lam, S2.lam)), S1.system)


def op_scale(c: FieldElem, S: OpSY) -> OpSY:
    c = _fe(c)
    return OpSY(c * S.alpha, tuple(c * v for v in S.lam), S.system)


def op_compose(S1: OpSY, S2: OpSY) -> OpSY:
    _check_same(S1, S2)
    a1, a2 = S1.alpha, S2.alpha
    lam = tuple(a1 * nu + a2 * mu + mu * nu for mu, nu in zip(S1.lam, S2.lam))
    return OpSY(a1 * a2, lam, S1.system)


def op_power(S: OpSY, n: int) -> OpSY:
    if n < 1:
        raise ValueError("power must be a positive integer")
    result = S
    for _ in range(n - 1):
        result = op_compose(result, S)
    return result


def op_norm(S: OpSY) -> NormExp:
    """max(|alpha|, max_i |lambda_i|)."""
    return max_magnitude(S.alpha.norm(), *(v.norm() for v in S.lam))


def norm_by_basis(S: OpSY) -> NormExp:
    """sup_n ||S e_n|| computed by applying S to basis vectors.

    Inside the support window of the system this is an explicit application;
    every e_n beyond it is orthogonal to all members, so S e_n = alpha e_n.
    """
    window_norms = [sup_norm(op_apply(S, Vec0.basis(n))) for n in S.system.window]
    return max_magnitude(S.alpha.norm(), *window_norms)


RawOperator = Callable[[Vec0], Vec0]


def check_self_adjoint(S: Union[OpSY, RawOperator], window: int = 1, base: Sequence[int] | None = None) -> bool:
    """Check <S e_n, e_k> = <e_n, S e_k> for all n, k in a finite window.

    For an ``OpSY`` the window is the system's support plus ``window`` extra
    indices.  Any callable Vec0 -> Vec0 is accepted as a raw operator; for
    those pass ``base`` (indices) or the window starts at 1.
    """
    if isinstance(S, OpSY):
        support = S.system.window
        top = (max(support) if support else 0) + window
        apply = S.__call__
    else:
        top = (max(base) if base else 0) + window
        apply = S
    idx = range(1, top + 1)
    images = {n: apply(Vec0.basis(n)) for n in idx}
    for n in idx:
        for k in idx:
            if k < n:
                continue
            lhs = inner_product(images[n], Vec0.basis(k))
            rhs = inner_product(Vec0.basis(n), images[k])
            if lhs != rhs:
                return False
    return True
