"""Clopen sets of sigma(T), the projection-valued measure and spectral integrals.

Spectrum points are addressed by integer ids: 0 is the point 0 and
1..n are the nonzero eigenvalues in ``Spectrum.points`` order.  At finite
rank every subset of sigma(T) is clopen.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .field import ONE, ZERO, FieldElem, NormExp, max_magnitude
from .operators import OpSY, op_norm, op_scale
from .polyx import PolyX, interpolate
from .spectral import Spectrum, grouped_projection, poly_in_operator, spectrum_of


class InvalidPartition(ValueError):
    pass


class UnknownPoint(KeyError):
    pass


@dataclass(frozen=True)
class Clopen:
    """{0} u points when includes_zero, else just points (ids >= 1)."""

    includes_zero: bool
    points: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))
        if any(p < 1 for p in self.points):
            raise ValueError("Clopen.points holds nonzero point ids (>= 1); use includes_zero for 0")

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> "Clopen":
        ids = set(ids)
        return cls(0 in ids, frozenset(ids - {0}))

    @classmethod
    def empty(cls) -> "Clopen":
        return cls(False, frozenset())

    @classmethod
    def whole(cls, sigma: Spectrum) -> "Clopen":
        return cls(True, frozenset(range(1, len(sigma.points) + 1)))

    @property
    def ids(self) -> frozenset[int]:
        return self.points | {0} if self.includes_zero else self.points

    def __contains__(self, ident: int) -> bool:
        return ident in self.ids

    def __and__(self, other: "Clopen") -> "Clopen":
        return Clopen.from_ids(self.ids & other.ids)

    def __or__(self, other: "Clopen") -> "Clopen":
        return Clopen.from_ids(self.ids | other.ids)

    def __le__(self, other: "Clopen") -> bool:
        return self.ids <= other.ids

    def is_empty(self) -> bool:
        return not self.ids

    def check_within(self, sigma: Spectrum) -> None:
        for p in self.points:
            if p > len(sigma.points):
                raise UnknownPoint(f"p{p} is not a point of the spectrum")

    def __str__(self) -> str:
        return "{" + ", ".join(f"p{i}" for i in sorted(self.ids)) + "}"


@dataclass(frozen=True)
class CFunc:
    """A function on sigma(T).  Points missing from ``values`` take ``at_zero``."""

    at_zero: FieldElem
    values: tuple[tuple[int, FieldElem], ...] = ()

    @classmethod
    def table(cls, at_zero: FieldElem, values: Mapping[int, FieldElem]) -> "CFunc":
        return cls(at_zero, tuple(sorted(values.items())))

    @classmethod
    def constant(cls, c) -> "CFunc":
        return cls(c if isinstance(c, FieldElem) else FieldElem.const(c))

    @classmethod
    def identity(cls, sigma: Spectrum) -> "CFunc":
        """f_T: lambda -> lambda."""
        return cls.table(ZERO, {p.ident: p.value for p in sigma.points})

    @classmethod
    def from_poly(cls, poly: PolyX, sigma: Spectrum) -> "CFunc":
        return cls.table(poly(ZERO), {p.ident: poly(p.value) for p in sigma.points})

    def __call__(self, ident: int) -> FieldElem:
        if ident == 0:
            return self.at_zero
        for k, v in self.values:
            if k == ident:
                return v
        return self.at_zero

    def on(self, sigma: Spectrum) -> dict[int, FieldElem]:
        """Total table over every id of sigma."""
        return {i: self(i) for i in sigma.ids()}

    def same_on(self, other: "CFunc", sigma: Spectrum) -> bool:
        return self.on(sigma) == other.on(sigma)

    def sup_norm(self, sigma: Spectrum) -> NormExp:
        return max_magnitude(*(v.norm() for v in self.on(sigma).values()))


def _pointwise(f: CFunc, g: CFunc, op) -> CFunc:
    keys = {k for k, _ in f.values} | {k for k, _ in g.values}
    return CFunc.table(op(f.at_zero, g.at_zero), {k: op(f(k), g(k)) for k in keys})


def f_add(f: CFunc, g: CFunc) -> CFunc:
    return _pointwise(f, g, lambda a, b: a + b)


def f_mul(f: CFunc, g: CFunc) -> CFunc:
    return _pointwise(f, g, lambda a, b: a * b)


def f_sub(f: CFunc, g: CFunc) -> CFunc:
    return _pointwise(f, g, lambda a, b: a - b)


def indicator(C: Clopen, sigma: Spectrum) -> CFunc:
    at_zero = ONE if C.includes_zero else ZERO
    return CFunc.table(at_zero, {p.ident: ONE if p.ident in C.points else ZERO for p in sigma.points})


# ---------------------------------------------------------------------------
# measure and integrals
# ---------------------------------------------------------------------------

def _spectrum(T: OpSY, sigma: Spectrum | None) -> Spectrum:
    return spectrum_of(T) if sigma is None else sigma


def measure_of(C: Clopen, T: OpSY, sigma: Spectrum | None = None) -> OpSY:
    """m_T(C): sum of E_p over C, or I minus the E_p outside C when 0 is in C."""
    sigma = _spectrum(T, sigma)
    C.check_within(sigma)
    if C.includes_zero:
        outside = [p for p in sigma.points if p.ident not in C.points]
        result = OpSY.identity(T.system)
        for p in outside:
            result = result - grouped_projection(sigma, p)
        return result
    result = OpSY.zero(T.system)
    for ident in sorted(C.points):
        result = result + grouped_projection(sigma, sigma.point(ident))
    return result


def integrate(f: CFunc, C: Clopen, T: OpSY, sigma: Spectrum | None = None) -> OpSY:
    """Closed form of the integral of f over C against m_T.

    sum over nonzero points p in C of f(p) E_p, plus f(0)(I - sum_all E_p)
    when 0 lies in C.
    """
    sigma = _spectrum(T, sigma)
    C.check_within(sigma)
    result = OpSY.zero(T.system)
    if C.includes_zero:
        result = op_scale(f(0), grouped_projection(sigma, sigma.zero))
    for ident in sorted(C.points):
        result = result + op_scale(f(ident), grouped_projection(sigma, sigma.point(ident)))
    return result


def psi(f: CFunc, T: OpSY, sigma: Spectrum | None = None) -> OpSY:
    """Inverse Gelfand transform: the operator in L_T whose transform is f."""
    sigma = _spectrum(T, sigma)
    return integrate(f, Clopen.whole(sigma), T, sigma)


def lagrange_interpolate(f: CFunc, T: OpSY, sigma: Spectrum | None = None) -> list[FieldElem]:
    """Coefficients a_0..a_n of the polynomial matching f on 0 and every eigenvalue.

    a_0 I + sum a_k T^k then equals psi(f) exactly.
    """
    sigma = _spectrum(T, sigma)
    nodes = [p.value for p in sigma.all_points()]
    values = [f(p.ident) for p in sigma.all_points()]
    coeffs = list(interpolate(nodes, values).coeffs)
    return coeffs or [ZERO]


def interpolated_operator(f: CFunc, T: OpSY, sigma: Spectrum | None = None) -> OpSY:
    return poly_in_operator(lagrange_interpolate(f, T, sigma), T)


# ---------------------------------------------------------------------------
# tagged partitions and Riemann sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaggedPartition:
    cells: tuple[tuple[Clopen, int], ...]

    @classmethod
    def of(cls, cells: Iterable[tuple[Clopen, int]]) -> "TaggedPartition":
        return cls(tuple(cells))

    @classmethod
    def singletons(cls, C: Clopen) -> "TaggedPartition":
        return cls(tuple((Clopen.from_ids({i}), i) for i in sorted(C.ids)))

    @property
    def domain(self) -> Clopen:
        return Clopen.from_ids(set().union(*(c.ids for c, _ in self.cells)))

    def validate(self, domain: Clopen | None = None) -> Clopen:
        seen: set[int] = set()
        for cell, tag in self.cells:
            if cell.is_empty():
                raise InvalidPartition("empty cell")
            if tag not in cell:
                raise InvalidPartition(f"tag p{tag} lies outside its cell {cell}")
            if seen & cell.ids:
                raise InvalidPartition(f"cell {cell} overlaps an earlier cell")
            seen |= cell.ids
        union = Clopen.from_ids(seen)
        if domain is not None and union != domain:
            raise InvalidPartition(f"cells cover {union}, expected {domain}")
        return union

    def __str__(self) -> str:
        return " | ".join(f"{cell}@p{tag}" for cell, tag in self.cells)


def riemann_sum(f: CFunc, part: TaggedPartition, T: OpSY, domain: Clopen | None = None,
                sigma: Spectrum | None = None) -> OpSY:
    """omega(f, m_T, C) = sum_k f(x_k) m_T(C_k)."""
    sigma = _spectrum(T, sigma)
    part.validate(domain)
    result = OpSY.zero(T.system)
    for cell, tag in part.cells:
        result = result + op_scale(f(tag), measure_of(cell, T, sigma))
    return result


def is_refinement(fine: TaggedPartition, coarse: TaggedPartition) -> bool:
    domain = coarse.validate()
    fine.validate(domain)
    return all(any(cell <= big for big, _ in coarse.cells) for cell, _ in fine.cells)


def oscillation_exponent(f: CFunc, cell: Clopen) -> float | int:
    """min over x, x' in the cell of valuation(f(x) - f(x')); inf on singletons."""
    vals = [f(i) for i in sorted(cell.ids)]
    return min(
        ((a - b).valuation() for a, b in itertools.combinations(vals, 2)),
        default=math.inf,
    )


def partition_bound(f: CFunc, part: TaggedPartition) -> float | int:
    return min((oscillation_exponent(f, cell) for cell, _ in part.cells), default=math.inf)


def riemann_error(f: CFunc, part: TaggedPartition, T: OpSY, sigma: Spectrum | None = None) -> NormExp:
    sigma = _spectrum(T, sigma)
    domain = part.validate()
    return op_norm(integrate(f, domain, T, sigma) - riemann_sum(f, part, T, domain, sigma))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def all_clopens(sigma: Spectrum) -> Iterator[Clopen]:
    ids = sigma.ids()
    for r in range(len(ids) + 1):
        for combo in itertools.combinations(ids, r):
            yield Clopen.from_ids(combo)


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[head]] + part
        for k in range(len(part)):
            yield part[:k] + [[head] + part[k]] + part[k + 1:]


def tagged_partitions(C: Clopen) -> Iterator[TaggedPartition]:
    """Every clopen partition of C with every choice of tags."""
    for blocks in set_partitions(sorted(C.ids)):
        blocks = sorted(sorted(b) for b in blocks)
        for tags in itertools.product(*blocks):
            yield TaggedPartition(tuple((Clopen.from_ids(b), tag) for b, tag in zip(blocks, tags)))
