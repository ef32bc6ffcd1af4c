"""Polynomials in the spectral variable x with coefficients in Q(t)."""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import ONE, ZERO, FieldElem


class PolyX:
    """Immutable polynomial sum_k coeffs[k] * x**k, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, FieldElem) else FieldElem.const(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[FieldElem, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "PolyX":
        return cls((ZERO, ONE))

    @classmethod
    def lift(cls, value) -> "PolyX":
        if isinstance(value, PolyX):
            return value
        return cls((value,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> FieldElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other) -> "PolyX":
        other = PolyX.lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyX(self.coefficient(k) + other.coefficient(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "PolyX":
        return PolyX(-c for c in self.coeffs)

    def __sub__(self, other) -> "PolyX":
        return self + (-PolyX.lift(other))

    def __rsub__(self, other) -> "PolyX":
        return PolyX.lift(other) - self

    def __mul__(self, other) -> "PolyX":
        other = PolyX.lift(other)
        if not self.coeffs or not other.coeffs:
            return PolyX()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyX(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyX":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = PolyX((ONE,))
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: FieldElem) -> "PolyX":
        return PolyX(a * c for a in self.coeffs)

    def __call__(self, x: FieldElem) -> FieldElem:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyX):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyX({[str(c) for c in self.coeffs]})"


def interpolate(nodes: Sequence[FieldElem], values: Sequence[FieldElem]) -> PolyX:
    """Unique polynomial of degree < len(nodes) through (nodes[i], values[i]).

    Newton divided differences; nodes must be pairwise distinct.
    """
    n = len(nodes)
    if n != len(values):
        raise ValueError("nodes and values differ in length")
    if len(set(nodes)) != n:
        raise ValueError("interpolation nodes are not distinct")
    table = list(values)
    newton = [table[0]] if n else []
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i])
            for i in range(n - level)
        ]
        newton.append(table[0])
    result = PolyX()
    for k in range(n - 1, -1, -1):
        result = result * PolyX((-nodes[k], ONE)) + newton[k]
    return result
