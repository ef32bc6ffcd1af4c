"""Finitely supported vectors in c0 over Q(t).

Indices are 1-based.  The inner product is the bilinear form
<x, y> = sum_i x_i y_i and the norm is the sup of entry magnitudes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .field import ZERO, FieldElem, NormExp, max_magnitude


class ZeroVector(ValueError):
    pass


class NotOrthogonal(ValueError):
    def __init__(self, i: int, j: int, product: FieldElem):
        super().__init__(f"<y({i}), y({j})> = {product} is not zero")
        self.i, self.j, self.product = i, j, product


class NotUnitNorm(ValueError):
    def __init__(self, i: int, exponent):
        super().__init__(f"y({i}) has norm exponent {exponent}, expected 0")
        self.i, self.exponent = i, exponent


@dataclass(frozen=True)
class Vec0:
    """Sorted ``(index, value)`` pairs; zero entries are never stored."""

    entries: tuple[tuple[int, FieldElem], ...] = ()

    @classmethod
    def from_mapping(cls, data: Mapping[int, FieldElem] | Iterable[tuple[int, FieldElem]]) -> "Vec0":
        items = data.items() if isinstance(data, Mapping) else data
        acc: dict[int, FieldElem] = {}
        for i, v in items:
            if not isinstance(i, int) or i < 1:
                raise ValueError(f"vector index must be a positive integer, got {i!r}")
            if not isinstance(v, FieldElem):
                v = FieldElem.const(v)
            acc[i] = acc.get(i, ZERO) + v
        return cls(tuple(sorted((i, v) for i, v in acc.items() if not v.is_zero())))

    @classmethod
    def of(cls, *values) -> "Vec0":
        """Dense constructor: ``Vec0.of(a1, a2, ...)``."""
        return cls.from_mapping(list(enumerate(values, start=1)))

    @classmethod
    def basis(cls, n: int) -> "Vec0":
        return cls.from_mapping({n: FieldElem.const(1)})

    def as_dict(self) -> dict[int, FieldElem]:
        return dict(self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def __getitem__(self, i: int) -> FieldElem:
        for j, v in self.entries:
            if j == i:
                return v
        return ZERO

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "Vec0") -> "Vec0":
        return Vec0.from_mapping(list(self.entries) + list(other.entries))

    def __neg__(self) -> "Vec0":
        return Vec0(tuple((i, -v) for i, v in self.entries))

    def __sub__(self, other: "Vec0") -> "Vec0":
        return self + (-other)

    def scale(self, c: FieldElem) -> "Vec0":
        if c.is_zero():
            return Vec0()
        return Vec0(tuple((i, c * v) for i, v in self.entries))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{i}: {v}" for i, v in self.entries) + "}"


def inner_product(x: Vec0, y: Vec0) -> FieldElem:
    yd = dict(y.entries)
    acc = ZERO
    for i, v in x.entries:
        w = yd.get(i)
        if w is not None:
            acc = acc + v * w
    return acc


def sup_norm(x: Vec0) -> NormExp:
    return max_magnitude(*(v.norm() for _, v in x.entries))


def inner_norm(x: Vec0) -> NormExp:
    """sqrt(|<x, x>|), i.e. half the valuation of <x, x>."""
    v = inner_product(x, x).valuation()
    return NormExp(v if v == float("inf") else Fraction(v, 2))


def normal_projection_apply(y: Vec0, x: Vec0, yy: FieldElem | None = None) -> Vec0:
    """(<x, y> / <y, y>) y.  ``yy`` may pass a cached <y, y>."""
    if y.is_zero():
        raise ZeroVector("normal projection onto the zero vector")
    if yy is None:
        yy = inner_product(y, y)
    return y.scale(inner_product(x, y) / yy)


@dataclass(frozen=True)
class OrthoSystem:
    members: tuple[Vec0, ...]
    gram_diag: tuple[FieldElem, ...] = field(compare=False)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def window(self) -> tuple[int, ...]:
        """Union of the members' supports, sorted."""
        return tuple(sorted({i for y in self.members for i in y.support}))

    def project(self, i: int, x: Vec0) -> Vec0:
        """P_i(x) for 1-based member index ``i``."""
        return normal_projection_apply(self.members[i - 1], x, self.gram_diag[i - 1])


def validate_orthosystem(members: Iterable[Vec0]) -> OrthoSystem:
    members = tuple(members)
    for i, y in enumerate(members, start=1):
        e = sup_norm(y).exponent
        if e != 0:
            raise NotUnitNorm(i, e)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            p = inner_product(members[i], members[j])
            if not p.is_zero():
                raise NotOrthogonal(i + 1, j + 1, p)
    gram = tuple(inner_product(y, y) for y in members)
    return OrthoSystem(members, gram)


def standard_system(m: int) -> OrthoSystem:
    return validate_orthosystem(Vec0.basis(n) for n in range(1, m + 1))
